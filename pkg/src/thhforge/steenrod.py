"""The mod-2 Steenrod algebra and its dual at all primes.

Admissible-form elements with Adem reduction live at p = 2 only; the
dual side (Milnor monomials, coproduct, conjugation) is implemented at
every prime.  Finite subalgebras A_n and exterior subalgebras on Milnor
primitives Q_i are handled by brute-force degreewise closure of their
generating sets, which also drives quotient-module, kernel and
annihilator computations.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from . import fplin

__all__ = [
    "SteenrodElement",
    "MilnorMonomial",
    "SubalgebraSpec",
    "GradedModulePresentation",
    "adem_reduce",
    "steenrod_mul",
    "steenrod_basis",
    "total_rank",
    "quotient_module",
    "module_map_kernel",
    "cyclic_and_annihilator_check",
    "milnor_basis",
    "milnor_coproduct",
    "milnor_mul",
    "conjugate",
    "antipode",
    "pairing",
    "dual_quotient_basis",
    "dual_action",
    "milnor_primitive",
    "parse_element",
    "parse_milnor",
    "element_str",
]


# ---------------------------------------------------------------------------
# admissible side, p = 2

# A SteenrodElement is an F_2 sum of admissible monomials, stored as a
# frozenset of exponent tuples.  The unit is the empty word ().
SteenrodElement = frozenset


def _binom_mod2(m: int, n: int) -> int:
    if n < 0 or n > m:
        return 0
    return 1 if (m - n) & n == 0 else 0


def is_admissible(word: Sequence[int]) -> bool:
    return all(word[j] >= 2 * word[j + 1] for j in range(len(word) - 1))


@lru_cache(maxsize=None)
def _adem_pair(a: int, b: int) -> frozenset:
    """Admissible expansion of the inadmissible product Sq^a Sq^b (a < 2b)."""
    assert 0 < a < 2 * b
    terms = set()
    for c in range(a // 2 + 1):
        if _binom_mod2(b - c - 1, a - 2 * c):
            word = (a + b - c,) if c == 0 else (a + b - c, c)
            terms.symmetric_difference_update({word})
    return frozenset(terms)


def adem_reduce(word: Sequence[int]) -> SteenrodElement:
    """Rewrite a word of Sq exponents into its admissible form over F_2.

    The unit is the empty word; exponent 0 is rejected.
    """
    if any(i <= 0 for i in word):
        raise ValueError("Sq exponents must be positive (unit = empty word)")
    result: set = set()
    stack = [tuple(word)]
    while stack:
        w = stack.pop()
        for j in range(len(w) - 1):
            if w[j] < 2 * w[j + 1]:
                for t in _adem_pair(w[j], w[j + 1]):
                    stack.append(w[:j] + t + w[j + 2 :])
                break
        else:
            result.symmetric_difference_update({w})
    return frozenset(result)


def steenrod_one() -> SteenrodElement:
    return frozenset({()})


def steenrod_mul(a: SteenrodElement, b: SteenrodElement) -> SteenrodElement:
    out: set = set()
    for u in a:
        for v in b:
            out.symmetric_difference_update(adem_reduce(u + v) if u + v else {()})
    return frozenset(out)


def steenrod_add(a: SteenrodElement, b: SteenrodElement) -> SteenrodElement:
    return a.symmetric_difference(b)


def element_degree(a: SteenrodElement) -> int | None:
    """Common degree of a homogeneous element, None for 0."""
    degs = {sum(w) for w in a}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError(f"inhomogeneous element: degrees {sorted(degs)}")
    return degs.pop()


def element_str(a: SteenrodElement) -> str:
    if not a:
        return "0"
    def mono(w):
        return "1" if not w else "".join(f"Sq{i}" for i in w)
    return "+".join(mono(w) for w in sorted(a))


def parse_element(text: str) -> SteenrodElement:
    """Parse sums of Sq words: 'Sq4Sq6+Sq6Sq4', 'Sq^2 Sq^1', '1', 'Q1'."""
    out: set = set()
    for term in text.replace(" ", "").split("+"):
        if not term:
            continue
        if term == "1":
            out.symmetric_difference_update({()})
            continue
        if term.startswith("Q") and term[1:].isdigit():
            out.symmetric_difference_update(milnor_primitive(int(term[1:])))
            continue
        word = []
        for piece in term.replace("^", "").split("Sq"):
            if piece:
                if not piece.isdigit():
                    raise ValueError(f"cannot parse term {term!r}")
                word.append(int(piece))
        if not word or not term.startswith("Sq"):
            raise ValueError(f"cannot parse term {term!r}")
        out.symmetric_difference_update(adem_reduce(word))
    return frozenset(out)


@lru_cache(maxsize=None)
def _admissible_bounded(d: int, cap: int) -> tuple[tuple[int, ...], ...]:
    if d == 0:
        return ((),)
    out = []
    for first in range(1, min(d, cap) + 1):
        for rest in _admissible_bounded(d - first, first // 2):
            out.append((first,) + rest)
    return tuple(sorted(out))


def admissible_monomials(d: int) -> list[tuple[int, ...]]:
    """All admissible Sq words of degree d, sorted lexicographically."""
    return list(_admissible_bounded(d, d))


@lru_cache(maxsize=None)
def milnor_primitive(k: int) -> SteenrodElement:
    """Q_k in admissible form: Q_0 = Sq^1 and Q_k = [Sq^{2^k}, Q_{k-1}]."""
    if k == 0:
        return frozenset({(1,)})
    q = milnor_primitive(k - 1)
    sq = frozenset({(2 ** k,)})
    return steenrod_add(steenrod_mul(sq, q), steenrod_mul(q, sq))


# ---------------------------------------------------------------------------
# subalgebras

@dataclass(frozen=True)
class SubalgebraSpec:
    """A itself, A_n = <Sq^1 ... Sq^{2^n}>, or an exterior algebra on Q_i's."""

    kind: str  # "A" | "An" | "E"
    n: int = -1
    qs: tuple[int, ...] = ()

    @staticmethod
    def full() -> "SubalgebraSpec":
        return SubalgebraSpec("A")

    @staticmethod
    def A(n: int) -> "SubalgebraSpec":
        if n < 0:
            raise ValueError("A_n needs n >= 0")
        return SubalgebraSpec("An", n=n)

    @staticmethod
    def E(*qs: int) -> "SubalgebraSpec":
        return SubalgebraSpec("E", qs=tuple(sorted(set(qs))))

    @staticmethod
    def En(n: int) -> "SubalgebraSpec":
        return SubalgebraSpec.E(*range(n + 1))

    @property
    def finite(self) -> bool:
        return self.kind != "A"

    @property
    def id(self) -> str:
        if self.kind == "A":
            return "A"
        if self.kind == "An":
            return f"A{self.n}"
        return "E" + "".join(str(q) for q in self.qs)

    def generator_exponents(self) -> list[int]:
        if self.kind != "An":
            raise ValueError("generator exponents only defined for A_n")
        return [2 ** i for i in range(self.n + 1)]

    def top_degree(self) -> int:
        if self.kind == "An":
            # dual is P(xi_j)/(xi_j^{2^{n+2-j}}), 1 <= j <= n+1
            return sum((2 ** (self.n + 2 - j) - 1) * (2 ** j - 1) for j in range(1, self.n + 2))
        if self.kind == "E":
            return sum(2 ** (k + 1) - 1 for k in self.qs)
        raise ValueError("full Steenrod algebra is infinite")

    @staticmethod
    def parse(text: str) -> "SubalgebraSpec":
        t = text.strip().upper().replace("(", "").replace(")", "").replace("Q", "")
        if t == "A":
            return SubalgebraSpec.full()
        if t.startswith("A") and t[1:].isdigit():
            return SubalgebraSpec.A(int(t[1:]))
        if t.startswith("E") and (t[1:].isdigit() or t == "E"):
            if t == "E":
                raise ValueError("full exterior subalgebra is infinite; list the Q indices")
            return SubalgebraSpec.E(*(int(c) for c in t[1:]))
        raise ValueError(f"unknown subalgebra {text!r}")


def _amb_index(d: int) -> dict[tuple[int, ...], int]:
    return {w: i for i, w in enumerate(admissible_monomials(d))}


def _to_vec(elt: SteenrodElement, index: Mapping[tuple, int]) -> dict[int, int]:
    return {index[w]: 1 for w in elt}


_basis_memo: dict[tuple[str, int], list[SteenrodElement]] = {}


def steenrod_basis(
    spec: SubalgebraSpec,
    degree: int,
    cache_dir: str | os.PathLike | None = None,
) -> list[SteenrodElement]:
    """F_2 basis of the subalgebra in one degree, in admissible coordinates.

    For the full algebra these are single admissible monomials.  For A_n
    the degreewise span is closed up from the generating set Sq^1, ...,
    Sq^{2^n}; basis vectors are the reduced rows of that span, so some
    are genuine sums (A_1 in degree 5 is spanned by Sq^5 + Sq^4 Sq^1).
    For exterior specs the basis is the square-free products of the Q_i.
    """
    if degree < 0:
        return []
    if spec.kind == "A":
        return [frozenset({w}) for w in admissible_monomials(degree)]
    if spec.finite and degree > spec.top_degree():
        return []
    key = (spec.id, degree)
    if key in _basis_memo:
        return _basis_memo[key]
    cached = _load_cached_basis(spec, degree, cache_dir)
    if cached is not None:
        _basis_memo[key] = cached
        return cached
    if spec.kind == "E":
        out = []
        for mask in range(1 << len(spec.qs)):
            picked = [spec.qs[i] for i in range(len(spec.qs)) if (mask >> i) & 1]
            if sum(2 ** (k + 1) - 1 for k in picked) != degree:
                continue
            elt = steenrod_one()
            for k in picked:
                elt = steenrod_mul(elt, milnor_primitive(k))
            out.append(elt)
        out.sort(key=lambda e: sorted(e))
        _basis_memo[key] = out
        _store_cached_basis(spec, degree, out, cache_dir)
        return out
    # A_n by closure: degree-d span = sum of Sq^{2^i} * basis(d - 2^i)
    if degree == 0:
        out = [steenrod_one()]
    else:
        index = _amb_index(degree)
        span = fplin.Span(len(index), 2)
        for i in spec.generator_exponents():
            g = frozenset({(i,)})
            for b in steenrod_basis(spec, degree - i, cache_dir):
                prod = steenrod_mul(g, b)
                if prod:
                    span.add(_to_vec(prod, index))
        inv = admissible_monomials(degree)
        out = [frozenset(inv[i] for i in row) for row in span.basis()]
    _basis_memo[key] = out
    _store_cached_basis(spec, degree, out, cache_dir)
    return out


def _cache_path(spec: SubalgebraSpec, degree: int, cache_dir) -> str | None:
    if cache_dir is None:
        cache_dir = os.environ.get("THHFORGE_CACHE")
    if cache_dir is None:
        return None
    return os.path.join(str(cache_dir), f"p2_{spec.id}_d{degree}.json")


def _load_cached_basis(spec, degree, cache_dir) -> list[SteenrodElement] | None:
    path = _cache_path(spec, degree, cache_dir)
    if path is None or not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            data = json.load(fh)
        if data.get("degree") != degree:
            raise ValueError("degree mismatch")
        basis = [parse_element(label) for label in data["basis"]]
        for elt in basis:
            if element_degree(elt) not in (degree, None):
                raise ValueError("bad cached element degree")
        return basis
    except Exception:
        # corrupt cache files are derived data: drop and recompute
        try:
            os.remove(path)
        except OSError:
            pass
        return None


def _store_cached_basis(spec, degree, basis, cache_dir) -> None:
    path = _cache_path(spec, degree, cache_dir)
    if path is None:
        return
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w") as fh:
            json.dump({"degree": degree, "basis": [element_str(e) for e in basis]}, fh)
    except OSError:
        pass


def total_rank(spec: SubalgebraSpec, cache_dir=None) -> int:
    """F_2 dimension of a finite subalgebra (A_n or exterior)."""
    if not spec.finite:
        raise ValueError("total rank of the full Steenrod algebra is infinite")
    return sum(len(steenrod_basis(spec, d, cache_dir)) for d in range(spec.top_degree() + 1))


# ---------------------------------------------------------------------------
# graded modules over a finite subalgebra

class GradedModulePresentation:
    """A degreewise-finite left module over a finite subalgebra of A.

    Carries per-degree bases with ambient representatives inside the
    subalgebra, together with matrices for left multiplication by the
    algebra generators Sq^{2^i}.
    """

    def __init__(
        self,
        spec: SubalgebraSpec,
        basis_elements: dict[int, list[SteenrodElement]],
        reduce_fn: Callable[[SteenrodElement, int], dict[int, int] | None],
    ):
        self.spec = spec
        self.elements = {d: list(v) for d, v in basis_elements.items() if v}
        self._reduce_fn = reduce_fn
        self.actions: dict[int, dict[int, list[dict[int, int]]]] = {}
        for g in spec.generator_exponents():
            per_deg: dict[int, list[dict[int, int]]] = {}
            for d, elts in self.elements.items():
                cols = []
                for e in elts:
                    img = steenrod_mul(frozenset({(g,)}), e)
                    cols.append(self.reduce_ambient(img, d + g) or {})
                per_deg[d] = cols
            self.actions[g] = per_deg

    # -- structure ---------------------------------------------------
    def degrees(self) -> list[int]:
        return sorted(self.elements)

    def dim(self, d: int) -> int:
        return len(self.elements.get(d, []))

    def labels(self, d: int) -> list[str]:
        return [element_str(e) for e in self.elements.get(d, [])]

    def poincare(self) -> dict[int, int]:
        return {d: len(v) for d, v in sorted(self.elements.items())}

    def total_rank(self) -> int:
        return sum(len(v) for v in self.elements.values())

    def reduce_ambient(self, elt: SteenrodElement, d: int) -> dict[int, int] | None:
        """Coordinates of an ambient subalgebra element in this module.

        Returns None when the element does not lie in the subalgebra span
        for that degree.
        """
        if not elt:
            return {}
        return self._reduce_fn(elt, d)

    def is_zero(self, elt: SteenrodElement, d: int) -> bool:
        coords = self.reduce_ambient(elt, d)
        if coords is None:
            raise ValueError("element not in module's ambient span")
        return not coords

    def act(self, gen_exp: int, d: int, coords: Mapping[int, int]) -> dict[int, int]:
        cols = self.actions[gen_exp].get(d, [])
        out: dict[int, int] = {}
        for j, c in coords.items():
            if c % 2:
                for i, v in cols[j].items():
                    out[i] = (out.get(i, 0) + v) % 2
        return {i: v for i, v in out.items() if v}

    def verify_action_relation(self, left: Sequence[int], right: Sequence[int]) -> bool:
        """Check that two generator words act identically (Adem spot check)."""
        for d in self.degrees():
            for j in range(self.dim(d)):
                a = {j: 1}
                da = d
                for g in reversed(left):
                    a = self.act(g, da, a)
                    da += g
                b = {j: 1}
                db = d
                for g in reversed(right):
                    b = self.act(g, db, b)
                    db += g
                if a != b:
                    return False
        return True


def _subalgebra_coords(spec: SubalgebraSpec, cache_dir=None):
    """Per-degree coordinate system on a finite subalgebra.

    Returns lookup(d) -> (elements, pivots, amb_index); the basis rows are
    in RREF so subalgebra coordinates are read off at the pivot columns.
    """
    memo: dict[int, tuple] = {}

    def lookup(d: int):
        if d not in memo:
            elts = steenrod_basis(spec, d, cache_dir)
            index = _amb_index(d)
            span = fplin.Span(len(index), 2)
            for e in elts:
                span.add(_to_vec(e, index))
            # reorder elements to match RREF rows (pivot order)
            rows = span.basis()
            inv = admissible_monomials(d)
            elts = [frozenset(inv[i] for i in row) for row in rows]
            memo[d] = (elts, span.pivots, index, span)
        return memo[d]

    return lookup


def quotient_module(
    spec: SubalgebraSpec,
    left_ideal_gens: Iterable[SteenrodElement],
    cache_dir=None,
) -> GradedModulePresentation:
    """Quotient of a finite subalgebra by the left ideal on the given generators."""
    if not spec.finite:
        raise ValueError("quotient modules need a finite subalgebra")
    gens = [g for g in left_ideal_gens if g]
    coords = _subalgebra_coords(spec, cache_dir)
    top = spec.top_degree()

    ideal_spans: dict[int, fplin.Span] = {}
    rep_data: dict[int, tuple[list[SteenrodElement], list[int]]] = {}
    for d in range(top + 1):
        elts, pivots, index, _ = coords(d)
        if not elts:
            continue
        span = fplin.Span(len(elts), 2)
        for g in gens:
            dg = element_degree(g)
            if dg is None or dg > d:
                continue
            for b in steenrod_basis(spec, d - dg, cache_dir):
                prod = steenrod_mul(b, g)
                if prod:
                    span.add(_coords_in(prod, pivots, index))
        ideal_spans[d] = span
        piv = set(span.pivots)
        reps = [j for j in range(len(elts)) if j not in piv]
        rep_data[d] = ([elts[j] for j in reps], reps)

    def reduce_fn(elt: SteenrodElement, d: int) -> dict[int, int] | None:
        if d not in rep_data:
            return {} if d > top or d < 0 else None
        elts, pivots, index, span = coords(d)
        vec = _to_vec(elt, index)
        if span.reduce(vec):
            return None  # not inside the subalgebra
        sub = _coords_in(elt, pivots, index)
        residue = ideal_spans[d].reduce(sub)
        reps = rep_data[d][1]
        pos = {j: i for i, j in enumerate(reps)}
        return {pos[j]: v for j, v in residue.items()}

    basis_elements = {d: rep_data[d][0] for d in rep_data}
    return GradedModulePresentation(spec, basis_elements, reduce_fn)


def _coords_in(elt: SteenrodElement, pivots: Sequence[int], index: Mapping[tuple, int]) -> dict[int, int]:
    vec = _to_vec(elt, index)
    return {j: 1 for j, piv in enumerate(pivots) if vec.get(piv)}


def module_map_kernel(
    f: SteenrodElement,
    source: GradedModulePresentation,
    target: GradedModulePresentation,
) -> tuple[GradedModulePresentation, int]:
    """Kernel of right multiplication by f, plus the cokernel rank.

    Right multiplication [u] -> [u f] is a left-module homomorphism;
    well-definedness on the quotients is asserted degreewise.
    """
    df = element_degree(f)
    if df is None:
        raise ValueError("zero map: kernel is the whole source")
    matrices: dict[int, list[dict[int, int]]] = {}
    total_rank_map = 0
    for d in source.degrees():
        cols = []
        for e in source.elements[d]:
            img = steenrod_mul(e, f)
            red = target.reduce_ambient(img, d + df)
            if red is None:
                raise ValueError(f"map image leaves target span in degree {d + df}")
            cols.append(red)
        matrices[d] = cols
        # well-definedness: [u f] must only depend on [u], checked on the
        # whole subalgebra in this degree
        for e in steenrod_basis(source.spec, d):
            coords = source.reduce_ambient(e, d)
            expect: dict[int, int] = {}
            for j, c in (coords or {}).items():
                if c % 2:
                    for i, v in cols[j].items():
                        expect[i] = (expect.get(i, 0) + v) % 2
            expect = {i: v for i, v in expect.items() if v}
            actual = target.reduce_ambient(steenrod_mul(e, f), d + df)
            if actual != expect:
                raise ValueError(f"right multiplication is not well defined in degree {d}")

    kernel_elements: dict[int, list[SteenrodElement]] = {}
    kernel_vecs: dict[int, list[dict[int, int]]] = {}
    for d in source.degrees():
        n = source.dim(d)
        m = target.dim(d + df)
        mat = fplin.SparseMat.from_rows(
            [ {j: matrices[d][j].get(i, 0) for j in range(n) if matrices[d][j].get(i)} for i in range(m) ],
            n,
            2,
        )
        total_rank_map += mat.rank()
        kvecs = [v.to_dict() for v in fplin.kernel_basis(mat)]
        if kvecs:
            elts = []
            for kv in kvecs:
                acc: SteenrodElement = frozenset()
                for j, c in kv.items():
                    if c % 2:
                        acc = steenrod_add(acc, source.elements[d][j])
                elts.append(acc)
            kernel_elements[d] = elts
            kernel_vecs[d] = kvecs

    cokernel_rank = sum(target.dim(d) for d in target.degrees()) - total_rank_map

    def reduce_fn(elt: SteenrodElement, d: int) -> dict[int, int] | None:
        amb = source.reduce_ambient(elt, d)
        if amb is None:
            return None
        if not amb:
            return {}
        vecs = kernel_vecs.get(d, [])
        sol = fplin.solve_in_span(vecs, amb, source.dim(d), 2)
        if sol is None:
            return None  # in the module but not in the kernel
        return {i: c for i, c in enumerate(sol) if c % 2}

    return GradedModulePresentation(source.spec, kernel_elements, reduce_fn), cokernel_rank


def cyclic_and_annihilator_check(
    m: GradedModulePresentation,
    generator: SteenrodElement,
    generator_degree: int,
    candidate_ann_gens: Iterable[SteenrodElement],
    cache_dir=None,
) -> bool:
    """True iff generator's orbit spans m, the candidates kill it, and the
    candidate quotient has m's Poincare series (shifted by the generator)."""
    coords = m.reduce_ambient(generator, generator_degree)
    if coords is None or not coords:
        return False
    # orbit closure under the algebra generators
    spans: dict[int, fplin.Span] = {}
    frontier: list[tuple[int, dict[int, int]]] = [(generator_degree, coords)]
    spans[generator_degree] = fplin.Span(m.dim(generator_degree), 2)
    spans[generator_degree].add(coords)
    while frontier:
        d, vec = frontier.pop()
        for g in m.spec.generator_exponents():
            img = m.act(g, d, vec)
            if not img:
                continue
            dd = d + g
            if dd not in spans:
                spans[dd] = fplin.Span(m.dim(dd), 2)
            if spans[dd].add(img):
                frontier.append((dd, img))
    orbit_dims = {d: sp.rank for d, sp in spans.items() if sp.rank}
    if orbit_dims != m.poincare():
        return False
    # candidates annihilate the generator
    cands = list(candidate_ann_gens)
    for c in cands:
        if not c:
            continue
        img = steenrod_mul(c, generator)
        if img and not m.is_zero(img, generator_degree + element_degree(c)):
            return False
    # quotient by the candidates matches m degreewise
    q = quotient_module(m.spec, cands, cache_dir)
    shifted = {d + generator_degree: n for d, n in q.poincare().items()}
    shifted = {d: n for d, n in shifted.items() if n}
    return shifted == m.poincare()


# ---------------------------------------------------------------------------
# the dual Steenrod algebra (all primes)

@dataclass(frozen=True, order=True)
class MilnorMonomial:
    """Monomial in the dual Steenrod algebra.

    xi holds exponents of xi_1, xi_2, ... (trailing zeros trimmed); tau
    is the set of indices of exterior generators tau_k (odd primes
    only).  The conjugated flag selects the antipode alphabet
    xibar/taubar.
    """

    xi: tuple[int, ...] = ()
    tau: tuple[int, ...] = ()  # sorted, distinct
    conjugated: bool = True

    def __post_init__(self):
        if self.xi and self.xi[-1] == 0:
            raise ValueError("trailing zero xi exponent")
        if list(self.tau) != sorted(set(self.tau)):
            raise ValueError("tau indices must be sorted and distinct")

    def degree(self, p: int) -> int:
        if p == 2:
            return sum(e * (2 ** (k + 1) - 1) for k, e in enumerate(self.xi))
        return sum(e * 2 * (p ** (k + 1) - 1) for k, e in enumerate(self.xi)) + sum(
            2 * p ** k - 1 for k in self.tau
        )

    def is_one(self) -> bool:
        return not self.xi and not self.tau

    def __str__(self) -> str:
        if self.is_one():
            return "1"
        bar = "bar" if self.conjugated else ""
        parts = []
        for k in self.tau:
            parts.append(f"tau{bar}{k}")
        for k, e in enumerate(self.xi):
            if e == 1:
                parts.append(f"xi{bar}{k + 1}")
            elif e:
                parts.append(f"xi{bar}{k + 1}^{e}")
        return " ".join(parts)


def _xi(k: int, e: int = 1, conjugated: bool = True) -> MilnorMonomial:
    xi = [0] * k
    xi[k - 1] = e
    return MilnorMonomial(tuple(xi), (), conjugated)


def _tau(k: int, conjugated: bool = True) -> MilnorMonomial:
    return MilnorMonomial((), (k,), conjugated)


def milnor_one(conjugated: bool = True) -> MilnorMonomial:
    return MilnorMonomial((), (), conjugated)


def milnor_mul(a: MilnorMonomial, b: MilnorMonomial, p: int) -> tuple[MilnorMonomial | None, int]:
    """Product of two monomials in the same alphabet: (monomial, sign) or (None, 0)."""
    if a.conjugated != b.conjugated:
        raise ValueError("mixed alphabets")
    if set(a.tau) & set(b.tau):
        return None, 0
    sign = 1
    if p != 2 and a.tau and b.tau:
        inv = sum(1 for i in a.tau for j in b.tau if i > j)
        sign = -1 if inv % 2 else 1
    n = max(len(a.xi), len(b.xi))
    xi = tuple((a.xi[i] if i < len(a.xi) else 0) + (b.xi[i] if i < len(b.xi) else 0) for i in range(n))
    while xi and xi[-1] == 0:
        xi = xi[:-1]
    return MilnorMonomial(xi, tuple(sorted(a.tau + b.tau)), a.conjugated), sign % p


def _elt_mul(a: Mapping[MilnorMonomial, int], b: Mapping[MilnorMonomial, int], p: int) -> dict[MilnorMonomial, int]:
    out: dict[MilnorMonomial, int] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m, s = milnor_mul(ma, mb, p)
            if m is None:
                continue
            c = (out.get(m, 0) + ca * cb * s) % p
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def milnor_basis(p: int, degree: int, conjugated: bool = True) -> list[MilnorMonomial]:
    """All dual-algebra monomials of the given degree, graded-lex ordered."""
    fplin.PrimeField(p)
    xi_degs = []
    k = 1
    while True:
        dk = (2 ** k - 1) if p == 2 else 2 * (p ** k - 1)
        if dk > degree:
            break
        xi_degs.append(dk)
        k += 1
    tau_degs = []
    if p != 2:
        k = 0
        while 2 * p ** k - 1 <= degree:
            tau_degs.append(2 * p ** k - 1)
            k += 1

    out: list[MilnorMonomial] = []

    def rec_xi(idx: int, remaining: int, exps: list[int], taus: tuple[int, ...]):
        if remaining == 0:
            xi = tuple(exps)
            while xi and xi[-1] == 0:
                xi = xi[:-1]
            out.append(MilnorMonomial(xi, taus, conjugated))
            return
        if idx >= len(xi_degs):
            return
        for e in range(remaining // xi_degs[idx] + 1):
            rec_xi(idx + 1, remaining - e * xi_degs[idx], exps + [e], taus)

    def rec_tau(idx: int, remaining: int, taus: list[int]):
        rec_xi(0, remaining, [], tuple(taus))
        for j in range(idx, len(tau_degs)):
            if tau_degs[j] <= remaining:
                rec_tau(j + 1, remaining - tau_degs[j], taus + [j])

    rec_tau(0, degree, [])
    out = [m for m in out if m.degree(p) == degree]
    return sorted(set(out), key=lambda m: (m.tau, m.xi))


_TensorElt = dict  # dict[(MilnorMonomial, MilnorMonomial), int]


def _tensor_mul(a: _TensorElt, b: _TensorElt, p: int) -> _TensorElt:
    out: _TensorElt = {}
    for (l1, r1), c1 in a.items():
        for (l2, r2), c2 in b.items():
            sign = 1
            if p != 2 and (r1.degree(p) % 2) and (l2.degree(p) % 2):
                sign = -1
            l, sl = milnor_mul(l1, l2, p)
            if l is None:
                continue
            r, sr = milnor_mul(r1, r2, p)
            if r is None:
                continue
            c = (out.get((l, r), 0) + c1 * c2 * sign * sl * sr) % p
            if c:
                out[(l, r)] = c
            else:
                out.pop((l, r), None)
    return out


def _gen_coproduct(gen: MilnorMonomial, p: int) -> _TensorElt:
    """Coproduct of a single xi_k / tau_k generator (exponent 1)."""
    conj = gen.conjugated
    one = milnor_one(conj)
    if gen.tau:
        (k,) = gen.tau
        out: _TensorElt = {}
        if conj:
            # psi(taubar_k) = 1 (x) taubar_k + sum taubar_i (x) xibar_j^{p^i}
            out[(one, _tau(k, conj))] = 1
            for i in range(0, k + 1):
                j = k - i
                right = one if j == 0 else _xi(j, p ** i, conj)
                key = (_tau(i, conj), right)
                out[key] = (out.get(key, 0) + 1) % p
        else:
            # psi(tau_k) = tau_k (x) 1 + sum xi_i^{p^j} (x) tau_j
            out[(_tau(k, conj), one)] = 1
            for j in range(0, k + 1):
                i = k - j
                left = one if i == 0 else _xi(i, p ** j, conj)
                key = (left, _tau(j, conj))
                out[key] = (out.get(key, 0) + 1) % p
        return {k2: v for k2, v in out.items() if v}
    k = len(gen.xi)
    out = {}
    for i in range(0, k + 1):
        j = k - i
        if conj:
            # psi(xibar_k) = sum xibar_i (x) xibar_j^{p^i}
            left = one if i == 0 else _xi(i, 1, conj)
            right = one if j == 0 else _xi(j, p ** i, conj)
        else:
            # psi(xi_k) = sum xi_i^{p^j} (x) xi_j
            left = one if i == 0 else _xi(i, p ** j, conj)
            right = one if j == 0 else _xi(j, 1, conj)
        out[(left, right)] = (out.get((left, right), 0) + 1) % p
    return {k2: v for k2, v in out.items() if v}


@lru_cache(maxsize=None)
def _coproduct_cached(m: MilnorMonomial, p: int) -> tuple:
    one = milnor_one(m.conjugated)
    acc: _TensorElt = {(one, one): 1}
    for k in m.tau:
        acc = _tensor_mul(acc, _gen_coproduct(_tau(k, m.conjugated), p), p)
    for idx, e in enumerate(m.xi):
        if e == 0:
            continue
        gen_psi = _gen_coproduct(_xi(idx + 1, 1, m.conjugated), p)
        power = gen_psi
        ebits = e
        result: _TensorElt | None = None
        while ebits:
            if ebits & 1:
                result = power if result is None else _tensor_mul(result, power, p)
            ebits >>= 1
            if ebits:
                power = _tensor_mul(power, power, p)
        acc = _tensor_mul(acc, result, p)
    return tuple(sorted(acc.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))))


def milnor_coproduct(m: MilnorMonomial, p: int) -> dict[tuple[MilnorMonomial, MilnorMonomial], int]:
    """Coproduct extended multiplicatively from the generator formulas."""
    return dict(_coproduct_cached(m, p))


@lru_cache(maxsize=None)
def _chi_xi(k: int, p: int) -> tuple:
    """chi(xi_k) as a polynomial in the unconjugated xi alphabet."""
    if k == 0:
        return ((milnor_one(False), 1),)
    # sum_{i+j=k} xi_i * chi(xi_j)^{p^i} = 0, so
    # chi(xi_k) = -sum_{i>=1} xi_i * chi(xi_{k-i})^{p^i}
    out: dict[MilnorMonomial, int] = {}
    for i in range(1, k + 1):
        term = _power_elt(dict(_chi_xi(k - i, p)), p ** i, p)
        term = _elt_mul({_xi(i, 1, False): 1}, term, p)
        for m, c in term.items():
            c2 = (out.get(m, 0) - c) % p
            if c2:
                out[m] = c2
            else:
                out.pop(m, None)
    return tuple(sorted(out.items(), key=lambda kv: str(kv[0])))


@lru_cache(maxsize=None)
def _chi_tau(k: int, p: int) -> tuple:
    """chi(tau_k) as a polynomial in the unconjugated alphabet."""
    # 0 = tau_k + sum_{i+j=k} xi_i^{p^j} * chi(tau_j), i >= 0 including i=0
    out: dict[MilnorMonomial, int] = {_tau(k, False): -1 % p}
    for i in range(1, k + 1):
        j = k - i
        term = _elt_mul({_xi(i, p ** j, False): 1}, dict(_chi_tau(j, p)), p)
        for m, c in term.items():
            c2 = (out.get(m, 0) - c) % p
            if c2:
                out[m] = c2
            else:
                out.pop(m, None)
    return tuple(sorted(out.items(), key=lambda kv: str(kv[0])))


def _power_elt(elt: dict[MilnorMonomial, int], e: int, p: int) -> dict[MilnorMonomial, int]:
    base_alphabet = next(iter(elt)).conjugated if elt else False
    result = {milnor_one(base_alphabet): 1}
    power = dict(elt)
    while e:
        if e & 1:
            result = _elt_mul(result, power, p)
        e >>= 1
        if e:
            power = _elt_mul(power, power, p)
    return result


def conjugate(m: MilnorMonomial, p: int) -> dict[MilnorMonomial, int]:
    """Expand a monomial in the opposite alphabet via the antipode recursion.

    A conjugated monomial comes back as a polynomial in plain xi/tau and
    vice versa; the same recursion works both ways since chi is an
    involution here.
    """
    target_conj = not m.conjugated
    out: dict[MilnorMonomial, int] = {milnor_one(target_conj): 1}

    def retag(elt: dict[MilnorMonomial, int]) -> dict[MilnorMonomial, int]:
        return {MilnorMonomial(mm.xi, mm.tau, target_conj): c for mm, c in elt.items()}

    for k in m.tau:
        out = _elt_mul(out, retag(dict(_chi_tau(k, p))), p)
    for idx, e in enumerate(m.xi):
        if e:
            out = _elt_mul(out, _power_elt(retag(dict(_chi_xi(idx + 1, p))), e, p), p)
    return out


def antipode(elt: Mapping[MilnorMonomial, int], p: int) -> dict[MilnorMonomial, int]:
    """Antipode chi on a polynomial, staying in its own alphabet."""
    out: dict[MilnorMonomial, int] = {}
    for m, c in elt.items():
        flipped = conjugate(m, p)
        for mm, cc in flipped.items():
            m2 = MilnorMonomial(mm.xi, mm.tau, m.conjugated)
            c2 = (out.get(m2, 0) + c * cc) % p
            if c2:
                out[m2] = c2
            else:
                out.pop(m2, None)
    return out


def _to_unconjugated(elt: Mapping[MilnorMonomial, int], p: int) -> dict[MilnorMonomial, int]:
    out: dict[MilnorMonomial, int] = {}
    for m, c in elt.items():
        if not m.conjugated:
            out[m] = (out.get(m, 0) + c) % p
        else:
            for mm, cc in conjugate(m, p).items():
                out[mm] = (out.get(mm, 0) + c * cc) % p
    return {m: c for m, c in out.items() if c % p}


def pairing(a: SteenrodElement, m: MilnorMonomial | Mapping[MilnorMonomial, int], p: int = 2) -> int:
    """<Sq^{i1}...Sq^{ik}, m> via iterated coproduct; p = 2 only.

    The base case is <Sq^i, xi_1^i> = 1 with every other degree-i
    monomial pairing to zero.
    """
    if p != 2:
        raise ValueError("the admissible-side pairing is implemented at p = 2 only")
    elt = {m: 1} if isinstance(m, MilnorMonomial) else dict(m)
    elt = _to_unconjugated(elt, 2)
    total = 0
    for word in a:
        for mono, c in elt.items():
            if sum(word) != mono.degree(2):
                raise ValueError("degree mismatch in pairing")
            total ^= _pair_word(word, mono) & (c % 2)
    return total


def _pair_word(word: tuple[int, ...], m: MilnorMonomial) -> int:
    if not word:
        return 1 if m.is_one() else 0
    if len(word) == 1:
        return 1 if m.xi == (word[0],) or (word[0] == 0 and m.is_one()) else 0
    i = word[0]
    total = 0
    for (l, r), c in milnor_coproduct(m, 2).items():
        if l.degree(2) == i and _pair_word((i,), l):
            total ^= _pair_word(word[1:], r) & c
    return total


_DUAL_QUOTIENT_GENS: dict[str, Callable[[int, int], list[tuple[MilnorMonomial, str]]]] = {}


def _dual_gens(name: str, p: int, max_degree: int) -> list[tuple[MilnorMonomial, str]]:
    """Monomial generators of (A//B)_* for the supported B, with kinds."""
    gens: list[tuple[MilnorMonomial, str]] = []

    def add_xi(k, e, kind="P"):
        g = _xi(k, e)
        if g.degree(p) <= max_degree:
            gens.append((g, kind))

    def add_tau(k):
        g = _tau(k)
        if g.degree(p) <= max_degree:
            gens.append((g, "E"))

    def xi_family(start, head_exps):
        # head_exps: exponents for xi_1..xi_{start-1}; xi_k for k >= start
        for i, e in enumerate(head_exps):
            add_xi(i + 1, e)
        k = len(head_exps) + 1
        while _xi(k, 1).degree(p) <= max_degree:
            add_xi(k, 1)
            k += 1

    if p == 2:
        if name == "E1":
            xi_family(3, [2, 2])
        elif name == "A1":
            xi_family(3, [4, 2])
        elif name == "A2":
            xi_family(4, [8, 4, 2])
        elif name == "EQ1":
            xi_family(3, [1, 2])
        elif name == "E":
            k = 1
            while _xi(k, 2).degree(2) <= max_degree:
                add_xi(k, 2)
                k += 1
        else:
            raise ValueError(f"unsupported subalgebra {name!r}")
    else:
        if name == "E1":
            xi_family(2, [1])
            k = 2
            while _tau(k).degree(p) <= max_degree:
                add_tau(k)
                k += 1
        elif name == "A1":
            xi_family(2, [p])
            k = 2
            while _tau(k).degree(p) <= max_degree:
                add_tau(k)
                k += 1
        elif name == "E":
            xi_family(1, [])
        else:
            raise ValueError(f"unsupported subalgebra {name!r} at odd p")
    return gens


def dual_quotient_basis(name: str, p: int, degree: int) -> list[MilnorMonomial]:
    """Monomial basis of (A//B)_* in one degree, B in {E1, A1, A2, EQ1, E}."""
    gens = _dual_gens(name, p, degree)
    out: list[MilnorMonomial] = []

    def rec(idx: int, remaining: int, acc: MilnorMonomial):
        if remaining == 0:
            out.append(acc)
            return
        if idx >= len(gens):
            return
        g, kind = gens[idx]
        dg = g.degree(p)
        rec(idx + 1, remaining, acc)
        e = 1
        cur = acc
        while e * dg <= remaining:
            m, s = milnor_mul(cur, g, p)
            if m is None or s == 0:
                break
            cur = m
            rec(idx + 1, remaining - e * dg, cur)
            if kind == "E":
                break
            e += 1

    rec(0, degree, milnor_one())
    return sorted(set(out), key=lambda m: (m.tau, m.xi))


def parse_milnor(text: str, p: int = 2) -> dict[MilnorMonomial, int]:
    """Parse 'xibar1^2 taubar0' / '2 xi2' style dual-algebra monomials."""
    text = text.strip()
    if text in ("1", ""):
        return {milnor_one(): 1}
    coeff = 1
    xi: dict[int, int] = {}
    taus: list[int] = []
    conj = None
    for tok in text.replace("*", " ").split():
        if tok.isdigit():
            coeff = coeff * int(tok) % p
            continue
        exp = 1
        if "^" in tok:
            tok, e = tok.split("^")
            exp = int(e)
        bar = "bar" in tok
        core = tok.replace("bar", "")
        if conj is None:
            conj = bar
        elif conj != bar:
            raise ValueError("mixed alphabets in one monomial")
        if core.startswith("xi"):
            xi[int(core[2:])] = xi.get(int(core[2:]), 0) + exp
        elif core.startswith("tau"):
            taus.append(int(core[3:]))
        else:
            raise ValueError(f"cannot parse dual-algebra token {tok!r}")
    n = max(xi, default=0)
    vec = tuple(xi.get(k, 0) for k in range(1, n + 1))
    m = MilnorMonomial(vec, tuple(sorted(taus)), True if conj is None else conj)
    return {m: coeff % p}


def dual_action(
    coaction_terms: Iterable[tuple[Mapping[MilnorMonomial, int], object]],
    r: int,
    p: int = 2,
) -> dict[object, int]:
    """Sq^r_* x = sum <Sq^r, a_i> x_i from a coaction nu(x) = sum a_i (x) x_i."""
    sq = frozenset({(r,)}) if r else steenrod_one()
    out: dict[object, int] = {}
    for a, x in coaction_terms:
        part = {mm: c for mm, c in a.items() if mm.degree(p) == r}
        if not part:
            continue
        c = pairing(sq, part, p)
        if c:
            out[x] = (out.get(x, 0) + c) % p
            if not out[x]:
                del out[x]
    return out
