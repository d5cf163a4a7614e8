"""Hochschild homology of presented graded-commutative algebras.

The normalized complex has q-chains m0 (x) m1 (x) ... (x) mq with m0 any
basis monomial and the remaining slots augmentation-reduced.  Homology,
the shuffle product, the chain-level coproduct into C (x)_Lambda C, the
bar-resolution roundtrip and the two closed-form shortcuts (sigma/divided
power generators, square-zero algebras) all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import fplin
from .gca import AlgebraPresentation, GeneratorSpec, HopfData, expand_divided

__all__ = [
    "HochschildComplex",
    "HHClass",
    "boundary",
    "hh_homology",
    "shuffle_product",
    "chain_coproduct",
    "coproduct_on_class",
    "bar_roundtrip_check",
    "closed_form_hh",
    "hh_squarezero",
    "is_free_over_base",
]

Chain = tuple      # tuple of monomials, length q+1
ChainElt = dict    # dict[Chain, int]


def sigma_name(base: str) -> str:
    return f"s({base})"


@dataclass(frozen=True)
class HHClass:
    """A homology class with a chosen cycle representative."""

    q: int
    t: int
    rep: tuple  # canonical tuple form of the chain element: ((chain, coeff), ...)

    def element(self) -> ChainElt:
        return dict(self.rep)

    @staticmethod
    def make(q: int, t: int, elt: ChainElt) -> "HHClass":
        return HHClass(q, t, tuple(sorted(elt.items())))


class HochschildComplex:
    """Normalized Hochschild complex of one presented algebra."""

    def __init__(self, algebra: AlgebraPresentation):
        self.A = algebra
        self._basis: dict[tuple[int, int], list[Chain]] = {}

    def chain_degree(self, c: Chain) -> int:
        return sum(self.A.degree(m) for m in c)

    def basis(self, q: int, t: int) -> list[Chain]:
        """All normalized chains of homological degree q, internal degree t."""
        key = (q, t)
        if key in self._basis:
            return self._basis[key]
        if q < 0 or t < 0:
            return []
        out: list[Chain] = []

        def rec(slots_left: int, remaining: int, acc: list):
            if slots_left == 0:
                if remaining == 0:
                    out.append(tuple(acc))
                return
            for d in range(remaining + 1):
                for m in self.A.reduced_basis(d):
                    rec(slots_left - 1, remaining - d, acc + [m])

        for d0 in range(t + 1):
            for m0 in self.A.monomial_basis(d0):
                rec(q, t - d0, [m0])
        out.sort()
        self._basis[key] = out
        return out

    def boundary_chain(self, c: Chain) -> ChainElt:
        """Hochschild boundary of one basis chain."""
        A = self.A
        q = len(c) - 1
        if q == 0:
            return {}
        p = A.p
        out: ChainElt = {}

        def put(chain: Chain, coeff: int) -> None:
            coeff %= p
            if not coeff:
                return
            v = (out.get(chain, 0) + coeff) % p
            if v:
                out[chain] = v
            else:
                del out[chain]

        for i in range(q):
            prod, s = A.mul_monomials(c[i], c[i + 1])
            if prod is None or s == 0:
                continue
            if i > 0 and not prod:
                continue  # normalized: unit in a reduced slot
            sign = (-1) ** i * s
            put(c[:i] + (prod,) + c[i + 2 :], sign)
        # cyclic last face, with the Koszul sign for moving the last slot front
        eps = A.degree(c[q]) * sum(A.degree(m) for m in c[:q])
        prod, s = A.mul_monomials(c[q], c[0])
        if prod is not None and s:
            put((prod,) + c[1:q], (-1) ** (q + eps) * s)
        return out

    def boundary(self, elt: ChainElt) -> ChainElt:
        out: ChainElt = {}
        p = self.A.p
        for c, coeff in elt.items():
            for c2, v in self.boundary_chain(c).items():
                w = (out.get(c2, 0) + coeff * v) % p
                if w:
                    out[c2] = w
                else:
                    del out[c2]
        return out

    def _vec(self, elt: ChainElt, index: Mapping[Chain, int]) -> dict[int, int]:
        return {index[c]: v for c, v in elt.items()}

    def boundary_matrix(self, q: int, t: int) -> tuple[list[Chain], list[Chain], list[dict[int, int]]]:
        """Basis of C_q,t, basis of C_{q-1},t, and的 columns of the boundary."""
        src = self.basis(q, t)
        dst = self.basis(q - 1, t)
        idx = {c: i for i, c in enumerate(dst)}
        cols = [self._vec(self.boundary_chain(c), idx) for c in src]
        return src, dst, cols

    def homology(self, q: int, t: int) -> list[HHClass]:
        """Homology classes at (q, t) with cycle representatives."""
        src, dst, cols = self.boundary_matrix(q, t)
        n = len(src)
        if n == 0:
            return []
        rows: dict[int, dict[int, int]] = {}
        for j, col in enumerate(cols):
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
        mat = fplin.SparseMat.from_rows(
            [rows.get(i, {}) for i in range(len(dst))], n, self.A.p
        )
        kernel = [v.to_dict() for v in fplin.kernel_basis(mat)]
        # image of the next boundary
        above = self.basis(q + 1, t)
        idx = {c: i for i, c in enumerate(src)}
        img = fplin.Span(n, self.A.p)
        for c in above:
            img.add(self._vec(self.boundary_chain(c), idx))
        reps: list[HHClass] = []
        span = img
        for vec in kernel:
            residue = span.reduce(vec)
            if residue:
                span.add(residue)
                elt = {src[i]: v for i, v in vec.items()}
                reps.append(HHClass.make(q, t, elt))
        return reps

    def class_coords(self, elt: ChainElt, q: int, t: int, reps: Sequence[HHClass]) -> list[int] | None:
        """Coordinates of a cycle in the chosen homology basis, or None."""
        src = self.basis(q, t)
        idx = {c: i for i, c in enumerate(src)}
        above = self.basis(q + 1, t)
        vectors = [self._vec(r.element(), idx) for r in reps]
        boundaries = []
        for c in above:
            v = self._vec(self.boundary_chain(c), idx)
            if v:
                boundaries.append(v)
        sol = fplin.solve_in_span(vectors + boundaries, self._vec(elt, idx), len(src), self.A.p)
        if sol is None:
            return None
        return sol[: len(vectors)]


def boundary(algebra: AlgebraPresentation, elt: ChainElt) -> ChainElt:
    return HochschildComplex(algebra).boundary(elt)


def hh_homology(
    algebra: AlgebraPresentation,
    max_degree: int,
    qmax: int | None = None,
) -> dict[tuple[int, int], list[HHClass]]:
    """Bigraded homology with representatives, for t <= max_degree.

    For connected positively graded algebras q is bounded by t; the
    square-zero and idempotent cases need an explicit qmax.
    """
    cx = HochschildComplex(algebra)
    has_deg0 = any(g.idempotent for g in algebra.gens) or (
        algebra.square_zero and any(g.degree == 0 for g in algebra.gens)
    )
    if has_deg0 and qmax is None:
        raise ValueError("algebras with degree-0 content need an explicit qmax")
    out: dict[tuple[int, int], list[HHClass]] = {}
    for t in range(max_degree + 1):
        top_q = qmax if qmax is not None else t
        for q in range(top_q + 1):
            if not has_deg0 and q > t:
                break
            classes = cx.homology(q, t)
            if classes:
                out[(q, t)] = classes
    return out


def hh_dims(hh: Mapping[tuple[int, int], list]) -> dict[tuple[int, int], int]:
    return {k: len(v) for k, v in hh.items()}


def presentation_dims_internal(
    presentation: AlgebraPresentation, max_internal: int
) -> dict[tuple[int, int], int]:
    """Bigraded dims of a filtered presentation re-indexed as (q, internal).

    Presentation generators carry total degrees; Hochschild homology is
    indexed by (homological q, internal t) with total = q + t.
    """
    out: dict[tuple[int, int], int] = {}
    # a class of internal degree t <= bound can have total degree up to 2t
    for (s, total), dim in presentation.bigraded_series(2 * max_internal).items():
        t = total - s
        if 0 <= t <= max_internal and dim:
            out[(s, t)] = out.get((s, t), 0) + dim
    return out


# ---------------------------------------------------------------------------
# shuffle product

def _shuffles(i: int, j: int):
    """All interleavings of 0..i-1 (tag 0) and 0..j-1 (tag 1), order kept."""
    if i == 0:
        yield (1,) * j
        return
    if j == 0:
        yield (0,) * i
        return
    for rest in _shuffles(i - 1, j):
        yield (0,) + rest
    for rest in _shuffles(i, j - 1):
        yield (1,) + rest


def shuffle_product(algebra: AlgebraPresentation, x: ChainElt, y: ChainElt) -> ChainElt:
    """Chain-level shuffle product; on cycles it represents the HH product.

    Each interleaving carries its permutation sign times the internal
    Koszul sign of the crossings, which is what makes the shuffle a chain
    map for the boundary used here; the second coefficient slot moves to
    the front with the internal Koszul sign.  The induced product is
    commutative in the bidegree-wise sense (-1)^{q q' + t t'}.
    """
    A = algebra
    p = A.p
    out: ChainElt = {}
    for c1, v1 in x.items():
        i = len(c1) - 1
        a = c1[1:]
        for c2, v2 in y.items():
            j = len(c2) - 1
            b = c2[1:]
            coeff0 = v1 * v2
            if p != 2 and A.degree(c2[0]) % 2:
                if sum(A.degree(m) for m in a) % 2:
                    coeff0 = -coeff0
            m0, s0 = A.mul_monomials(c1[0], c2[0])
            if m0 is None or s0 == 0:
                continue
            coeff0 *= s0
            for pattern in _shuffles(i, j):
                slots = []
                ia = ib = 0
                for tag in pattern:
                    if tag == 0:
                        slots.append(a[ia])
                        ia += 1
                    else:
                        slots.append(b[ib])
                        ib += 1
                sign = _shuffle_sign(A, a, b, pattern)
                key = (m0,) + tuple(slots)
                c = (out.get(key, 0) + coeff0 * sign) % p
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
    return out


def _shuffle_sign(A: AlgebraPresentation, a: Sequence, b: Sequence, pattern: Sequence[int]) -> int:
    """Sign of one interleaving: -(-1)^{|a||b|} per crossing (permutation
    sign times the internal Koszul sign)."""
    if A.p == 2:
        return 1
    sign = 1
    b_placed: list[int] = []  # internal degrees of b-slots already placed
    ia = ib = 0
    for tag in pattern:
        if tag == 0:
            da = A.degree(a[ia])
            for db in b_placed:
                if not (da % 2 and db % 2):
                    sign = -sign
            ia += 1
        else:
            b_placed.append(A.degree(b[ib]))
            ib += 1
    return sign


# ---------------------------------------------------------------------------
# chain-level coproduct into C (x)_Lambda C

TensorElt = dict  # dict[(Chain, Chain)] -> coeff, right factor has unit slot 0


def _canonicalize_tensor(A: AlgebraPresentation, left: Chain, right: Chain, coeff: int) -> tuple[tuple[Chain, Chain], int] | None:
    """Move the right coefficient slot across to the left factor."""
    lam = right[0]
    if not lam:
        return (left, right), coeff
    if A.p != 2 and A.degree(lam) % 2:
        # the base acts through the coefficient slot with internal Koszul sign
        if sum(A.degree(m) for m in left) % 2:
            coeff = -coeff
    m0, s = A.mul_monomials(lam, left[0])
    if m0 is None or s == 0:
        return None
    return ((m0,) + left[1:], ((),) + right[1:]), coeff * s


def chain_coproduct(algebra: AlgebraPresentation, elt: ChainElt) -> TensorElt:
    """psi(m0 (x) ... (x) mq) = sum_i (m0..mi) (x)_Lambda (1, m_{i+1}..mq)."""
    p = algebra.p
    out: TensorElt = {}
    for c, v in elt.items():
        q = len(c) - 1
        for i in range(q + 1):
            left = c[: i + 1]
            right = ((),) + c[i + 1 :]
            key = (left, right)
            w = (out.get(key, 0) + v) % p
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return out


def tensor_boundary(A: AlgebraPresentation, elt: TensorElt) -> TensorElt:
    """Differential of C (x)_Lambda C with the homological Koszul sign."""
    cx = HochschildComplex(A)
    p = A.p
    out: TensorElt = {}

    def put(left: Chain, right: Chain, coeff: int) -> None:
        canon = _canonicalize_tensor(A, left, right, coeff)
        if canon is None:
            return
        (l, r), c = canon
        c %= p
        if not c:
            return
        v = (out.get((l, r), 0) + c) % p
        if v:
            out[(l, r)] = v
        else:
            del out[(l, r)]

    for (left, right), v in elt.items():
        for l2, c2 in cx.boundary_chain(left).items():
            put(l2, right, v * c2)
        sgn = (-1) ** (len(left) - 1)
        for r2, c2 in cx.boundary_chain(right).items():
            put(left, r2, v * c2 * sgn)
    return out


def coproduct_on_class(
    algebra: AlgebraPresentation,
    cls: HHClass,
    hh: Mapping[tuple[int, int], list[HHClass]],
) -> dict[tuple[HHClass, HHClass], int]:
    """Project psi(representative) to the Kunneth basis of HH (x)_Lambda HH.

    Requires HH free over the base through the relevant degrees (see
    is_free_over_base); a failed projection signals non-flatness and is
    refused with a diagnostic.
    """
    A = algebra
    p = A.p
    psi = chain_coproduct(A, cls.element())
    by_bidegree: dict[tuple[int, int, int, int], TensorElt] = {}
    cx = HochschildComplex(A)
    for (l, r), v in psi.items():
        key = (len(l) - 1, cx.chain_degree(l), len(r) - 1, cx.chain_degree(r))
        by_bidegree.setdefault(key, {})[(l, r)] = v
    out: dict[tuple[HHClass, HHClass], int] = {}
    for (q1, t1, q2, t2), part in by_bidegree.items():
        reps1 = hh.get((q1, t1), [])
        reps2 = hh.get((q2, t2), [])
        # basis of the tensor bidegree: canonical chain pairs
        pairs = []
        for l in cx.basis(q1, t1):
            for r in cx.basis(q2, t2):
                if not r[0]:
                    pairs.append((l, r))
        idx = {pr: i for i, pr in enumerate(pairs)}

        def vec(te: TensorElt) -> dict[int, int]:
            return {idx[k]: v for k, v in te.items()}

        candidates: list[dict[int, int]] = []
        labels: list[tuple[HHClass, HHClass]] = []
        for r1 in reps1:
            for r2 in reps2:
                te: TensorElt = {}
                for c1, v1 in r1.element().items():
                    for c2, v2 in r2.element().items():
                        canon = _canonicalize_tensor(A, c1, c2, v1 * v2)
                        if canon is None:
                            continue
                        (l, r), c = canon
                        c %= p
                        if c:
                            te[(l, r)] = (te.get((l, r), 0) + c) % p
                candidates.append(vec(te))
                labels.append((r1, r2))
        # boundaries inside the tensor complex at total bidegree +1
        boundaries = []
        for l in cx.basis(q1 + 1, t1):
            for r in cx.basis(q2, t2):
                if r[0]:
                    continue
                te = tensor_boundary(A, {(l, r): 1})
                te = {k: v for k, v in te.items() if k in idx}
                if te:
                    boundaries.append(vec(te))
        for l in cx.basis(q1, t1):
            for r in cx.basis(q2 + 1, t2):
                if r[0]:
                    continue
                te = tensor_boundary(A, {(l, r): 1})
                te = {k: v for k, v in te.items() if k in idx}
                if te:
                    boundaries.append(vec(te))
        sol = fplin.solve_in_span(candidates + boundaries, vec(part), len(pairs), p)
        if sol is None:
            raise ValueError(
                f"coproduct projection failed in bidegree ({q1},{t1})x({q2},{t2}): "
                "homology is not free over the base there"
            )
        for c, lab in zip(sol[: len(candidates)], labels):
            if c:
                out[lab] = (out.get(lab, 0) + c) % p
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# bar construction roundtrip

BarChain = tuple  # (lambda_0, mids..., lambda_{q+1})


def _bar_psi(A: AlgebraPresentation, c: BarChain) -> dict[tuple[BarChain, BarChain], int]:
    q = len(c) - 2
    out = {}
    for i in range(q + 1):
        left = c[: i + 1] + ((),)
        right = ((),) + c[i + 1 :]
        out[(left, right)] = (out.get((left, right), 0) + 1) % A.p
    return out


def _bar_degeneracy(c: BarChain, j: int) -> BarChain:
    # insert a unit as the j-th middle slot
    return c[: j + 1] + ((),) + c[j + 1 :]


def _apply_degeneracies(c: BarChain, positions: Sequence[int]) -> BarChain:
    out = c
    for j in sorted(positions):
        out = _bar_degeneracy(out, j)
    return out


def _bar_augment(A: AlgebraPresentation, c: BarChain) -> tuple:
    acc: tuple | None = ()
    coeff = 1
    for m in c:
        acc2, s = A.mul_monomials(acc, m)
        if acc2 is None or s == 0:
            return None, 0
        acc = acc2
        coeff *= s
    return acc, coeff


def bar_roundtrip_check(algebra: AlgebraPresentation, qmax: int, tmax: int) -> bool:
    """pi o sh o psi = id on normalized bar chains through the bounds.

    Shuffle terms acquiring unit middle slots die in the normalized
    complex; the check verifies that what survives is exactly the
    original chain.
    """
    from itertools import combinations

    A = algebra
    p = A.p
    for q in range(qmax + 1):
        for t in range(tmax + 1):
            for c in _bar_basis(A, q, t):
                total: dict[BarChain, int] = {}
                for (x, y), v in _bar_psi(A, c).items():
                    i = len(x) - 2
                    j = len(y) - 2
                    # shuffle x (B_i) and y (B_j) up to B_{i+j} via
                    # complementary degeneracies
                    positions = range(i + j)
                    for nu in combinations(positions, j):
                        mu = tuple(k for k in positions if k not in nu)
                        xs = _apply_degeneracies(x, nu)
                        ys = _apply_degeneracies(y, mu)
                        sign = _bar_shuffle_sign(A, x, y, nu, mu)
                        # pi: multiply augmentation of ys into xs's right slot
                        eps, s = _bar_augment(A, ys)
                        if eps is None or s == 0:
                            continue
                        if any(not m for m in xs[1:-1]):
                            continue  # degenerate in the normalized complex
                        last, s2 = A.mul_monomials(xs[-1], eps)
                        if last is None or s2 == 0:
                            continue
                        chain = xs[:-1] + (last,)
                        w = (total.get(chain, 0) + v * sign * s * s2) % p
                        if w:
                            total[chain] = w
                        else:
                            total.pop(chain, None)
                if total != {c: 1}:
                    return False
    return True


def _bar_shuffle_sign(A, x, y, nu, mu) -> int:
    if A.p == 2:
        return 1
    # slots of x at interleave positions mu, slots of y at positions nu;
    # each crossing pair contributes (1+|a|)(1+|b|)
    degs_x = [1 + A.degree(m) for m in x[1:-1]]
    degs_y = [1 + A.degree(m) for m in y[1:-1]]
    sign = 1
    for ax, px in zip(degs_x, mu):
        for by, py in zip(degs_y, nu):
            if py < px and (ax % 2) and (by % 2):
                sign = -sign
    return sign


def _bar_basis(A: AlgebraPresentation, q: int, t: int) -> list[BarChain]:
    res: list[BarChain] = []
    for d0 in range(t + 1):
        for m0 in A.monomial_basis(d0):

            def rec(slots_left: int, remaining: int, acc: list):
                if slots_left == 0:
                    for mlast in A.monomial_basis(remaining):
                        res.append((m0, *acc, mlast))
                    return
                for d in range(remaining + 1):
                    for m in A.reduced_basis(d):
                        rec(slots_left - 1, remaining - d, acc + [m])

            rec(q, t - d0, [])
    return sorted(set(res))


# ---------------------------------------------------------------------------
# closed forms

def closed_form_hh(
    algebra: AlgebraPresentation,
    max_degree: int | None = None,
) -> tuple[AlgebraPresentation, HopfData]:
    """HH of a free graded-commutative presentation, by generators.

    Polynomial x contributes an exterior suspension s(x); exterior x a
    divided power tower on s(x); anything else is out of range.  The
    result records filtrations (s(x): 1, gamma_k: k) and the fiberwise
    coproducts.
    """
    n = algebra.N if max_degree is None else max_degree
    if algebra.square_zero:
        raise ValueError("square-zero input: use hh_squarezero")
    gens: list[GeneratorSpec] = []
    for g in algebra.gens:
        gens.append(g)
    for g in algebra.gens:
        if g.idempotent:
            continue
        sname = sigma_name(g.name)
        if g.kind == "polynomial":
            if g.degree + 1 <= n:
                gens.append(
                    GeneratorSpec(sname, g.degree + 1, "exterior", filtration=1, sigma_of=g.name)
                )
        elif g.kind == "exterior":
            gens.extend(expand_divided(sname, g.degree + 1, algebra.p, n, filtration=1, sigma_of=g.name))
        else:
            raise ValueError(f"unsupported generator kind for closed form: {g.kind}")
    out = AlgebraPresentation(algebra.p, gens, n)
    hopf = HopfData(out)
    for g in out.gens:
        if g.filtration == 0:
            continue
        if g.gamma_power:
            hopf.set_divided(g.name, sigma_name(g.sigma_of), g.gamma_power)
        else:
            hopf.set_primitive(g.name)
    return out, hopf


def hh_squarezero(
    vee: Sequence[tuple[str, int]],
    qmax: int,
    p: int = 2,
    max_degree: int | None = None,
) -> dict[tuple[int, int], int]:
    """HH of the split square-zero extension k + V, as bigraded dims.

    HH_q = invariants of the signed cyclic action on V^{(x) q} plus
    coinvariants on V^{(x) (q+1)}; the generator acts as (-1)^{q+1} times
    the cyclic permutation with its Koszul sign.
    """
    degs = [d for _, d in vee]
    n = max_degree if max_degree is not None else (max(degs, default=0)) * (qmax + 1)

    def words(length: int) -> list[tuple]:
        """Words of the given length with total degree within the bound."""
        out = [((), 0)]
        for _ in range(length):
            out = [
                (w + (i,), t + degs[i])
                for w, t in out
                for i in range(len(vee))
                if t + degs[i] <= n
            ]
        return [w for w, _ in out]

    min_deg = min((d for d in degs if d > 0), default=0)
    inv_dims: dict[tuple[int, int], int] = {}
    coinv_dims: dict[tuple[int, int], int] = {}
    for q in range(0, qmax + 2):
        if q == 0:
            inv_dims[(0, 0)] = 1
            continue
        if min_deg and q * min_deg > n:
            break
        by_t: dict[int, list[tuple]] = {}
        for w in words(q):
            t = sum(degs[i] for i in w)
            if t <= n:
                by_t.setdefault(t, []).append(w)
        for t, basis in by_t.items():
            idx = {w: i for i, w in enumerate(basis)}
            rows = []
            for w in basis:
                # (1 - T) w, T = (-1)^{q+1} t_q with the Koszul sign
                last = w[-1]
                rotated = (last,) + w[:-1]
                eps = degs[last] * sum(degs[i] for i in w[:-1])
                sign = (-1) ** (q + 1 + eps)
                row = {idx[w]: 1}
                v = (row.get(idx[rotated], 0) - sign) % p
                if v:
                    row[idx[rotated]] = v
                else:
                    row.pop(idx[rotated], None)
                rows.append(row)
            mat = fplin.SparseMat.from_rows(rows, len(basis), p)
            r = mat.rank()
            inv_dims[(q, t)] = len(basis) - r     # ker(1-T) on V^{(x) q}
            coinv_dims[(q, t)] = len(basis) - r   # cok(1-T), same rank count
    out: dict[tuple[int, int], int] = {}
    for q in range(0, qmax + 1):
        keys = {t for (qq, t) in inv_dims if qq == q} | {t for (qq, t) in coinv_dims if qq == q + 1}
        for t in keys:
            d = inv_dims.get((q, t), 0) + coinv_dims.get((q + 1, t), 0)
            if d:
                out[(q, t)] = out.get((q, t), 0) + d
    return out


def is_free_over_base(
    bigraded_dims: Mapping[tuple[int, int], int],
    base_series: Sequence[int],
    max_degree: int,
    qmax: int,
) -> tuple[bool, dict[tuple[int, int], int]]:
    """Series-division test for degreewise freeness over the base ring.

    Divides each homological row by the base Poincare series; freeness
    forces the quotient coefficients to be nonnegative integers.
    """
    fiber: dict[tuple[int, int], int] = {}
    for q in range(qmax + 1):
        for t in range(max_degree + 1):
            v = bigraded_dims.get((q, t), 0)
            for s in range(1, t + 1):
                if s < len(base_series) and base_series[s]:
                    v -= base_series[s] * fiber.get((q, t - s), 0)
            if v < 0:
                return False, {}
            if v:
                fiber[(q, t)] = v
    return True, fiber
