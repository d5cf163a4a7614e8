"""Presented graded-commutative F_p-algebras.

A presentation is a list of generators of four kinds (polynomial,
exterior, truncated of height h, divided power), an optional square-zero
flag, and a degree bound N up to which monomial bases are materialized.
Divided power generators are stored expanded as the truncated height-p
family gamma_{p^i}; general gamma_j are derived monomials.

Coaction tables over the dual Steenrod algebra and fiberwise coproduct
data (for spectral sequence pages) live here too, together with the two
primitive-space computations they support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import fplin
from .steenrod import MilnorMonomial, milnor_mul, milnor_one

__all__ = [
    "GeneratorSpec",
    "AlgebraPresentation",
    "CoactionTable",
    "HopfData",
    "expand_divided",
    "gamma_coefficient",
    "comodule_primitives",
    "coalgebra_primitives",
    "tensor_series",
]

Monomial = tuple  # tuple[(gen_index, exponent), ...], sorted by index
Element = dict    # dict[Monomial, int]


@dataclass(frozen=True)
class GeneratorSpec:
    """One algebra generator.

    kind is one of polynomial | exterior | truncated; divided power
    input is expanded before reaching here (see expand_divided).  The
    filtration field carries the homological filtration on spectral
    sequence pages; sigma_of/gamma_power record how suspension classes
    were produced so the extension-resolution rules can find them.
    """

    name: str
    degree: int
    kind: str
    height: int = 0          # for truncated
    filtration: int = 0
    idempotent: bool = False
    sigma_of: str | None = None
    gamma_power: int = 0     # p^i for members of a divided tower, else 0

    def max_exponent(self) -> int | None:
        if self.idempotent:
            return 1
        if self.kind == "exterior":
            return 1
        if self.kind == "truncated":
            return self.height - 1
        return None  # polynomial


def expand_divided(
    name: str,
    degree: int,
    p: int,
    max_degree: int,
    filtration: int = 0,
    sigma_of: str | None = None,
) -> list[GeneratorSpec]:
    """Divided power algebra on one class as truncated height-p generators.

    Members are gamma_{p^i}; gamma_1 keeps the given name, higher members
    are labelled g{p^i}(name).  Materialized while the degree stays within
    the bound.
    """
    out = []
    i = 0
    while degree * p ** i <= max_degree:
        gname = name if i == 0 else f"g{p ** i}({name})"
        out.append(
            GeneratorSpec(
                gname,
                degree * p ** i,
                "exterior" if p == 2 else "truncated",
                height=p,
                filtration=filtration * p ** i,
                sigma_of=sigma_of,
                gamma_power=p ** i,
            )
        )
        i += 1
    return out


def gamma_coefficient(j: int, p: int) -> int:
    """Unit c with gamma_j = c^{-1} * prod gamma_{p^i}^{a_i}, j = sum a_i p^i."""
    digits = []
    jj = j
    while jj:
        digits.append(jj % p)
        jj //= p
    denom = 1
    for i, a in enumerate(digits):
        denom *= math.factorial(p ** i) ** a
    c = math.factorial(j) // denom
    return c % p


class AlgebraPresentation:
    """Free graded-commutative algebra on generators, with kind relations."""

    def __init__(
        self,
        p: int,
        generators: Sequence[GeneratorSpec],
        max_degree: int,
        square_zero: bool = False,
    ):
        fplin.PrimeField(p)
        self.p = p
        self.N = max_degree
        self.square_zero = square_zero
        self.gens: list[GeneratorSpec] = list(generators)
        self.index = {g.name: i for i, g in enumerate(self.gens)}
        if len(self.index) != len(self.gens):
            raise ValueError("duplicate generator names")
        for g in self.gens:
            if g.degree == 0 and not g.idempotent:
                raise ValueError(f"degree-0 generator {g.name} must be idempotent")
            if p != 2 and g.degree % 2 and g.max_exponent() not in (1,):
                raise ValueError(f"odd-degree generator {g.name} must be exterior at odd p")
        self._basis_cache: dict[int, list[Monomial]] = {}

    # -- monomials -----------------------------------------------------
    def one(self) -> Monomial:
        return ()

    def gen_monomial(self, name: str, e: int = 1) -> Monomial:
        return ((self.index[name], e),)

    def degree(self, m: Monomial) -> int:
        return sum(self.gens[i].degree * e for i, e in m)

    def filtration(self, m: Monomial) -> int:
        return sum(self.gens[i].filtration * e for i, e in m)

    def monomial_str(self, m: Monomial) -> str:
        if not m:
            return "1"
        parts = []
        for i, e in m:
            parts.append(self.gens[i].name if e == 1 else f"{self.gens[i].name}^{e}")
        return " ".join(parts)

    def parse_monomial(self, text: str) -> Monomial:
        text = text.strip()
        if text in ("1", ""):
            return ()
        exps: dict[int, int] = {}
        for part in text.replace("*", " ").split():
            # generator names may themselves contain carets (xibar1^2), so
            # try the whole token first, then split at the last caret
            if part in self.index:
                name, e = part, 1
            elif "^" in part and part.rsplit("^", 1)[0] in self.index:
                name, etxt = part.rsplit("^", 1)
                e = int(etxt)
            else:
                raise KeyError(f"unknown generator in monomial: {part!r}")
            exps[self.index[name]] = exps.get(self.index[name], 0) + e
        return tuple(sorted(exps.items()))

    def _sign(self, m1: Monomial, m2: Monomial) -> int:
        if self.p == 2:
            return 1
        odd1 = [i for i, e in m1 if self.gens[i].degree % 2 for _ in range(e)]
        odd2 = [i for i, e in m2 if self.gens[i].degree % 2 for _ in range(e)]
        inv = sum(1 for a in odd1 for b in odd2 if a > b)
        return -1 if inv % 2 else 1

    def mul_monomials(self, m1: Monomial, m2: Monomial) -> tuple[Monomial | None, int]:
        """Product with kind relations and Koszul sign; (None, 0) if zero."""
        if not m1:
            return m2, 1
        if not m2:
            return m1, 1
        if self.square_zero and self.degree(m1) > 0 and self.degree(m2) > 0:
            return None, 0
        sign = self._sign(m1, m2)
        exps = dict(m1)
        for i, e in m2:
            exps[i] = exps.get(i, 0) + e
        out = []
        for i in sorted(exps):
            e = exps[i]
            g = self.gens[i]
            if g.idempotent:
                e = 1
            else:
                cap = g.max_exponent()
                if cap is not None and e > cap:
                    return None, 0
            out.append((i, e))
        return tuple(out), sign % self.p

    # -- elements ------------------------------------------------------
    def el(self, *terms: tuple[Monomial, int]) -> Element:
        out: Element = {}
        for m, c in terms:
            c %= self.p
            if c:
                out[m] = (out.get(m, 0) + c) % self.p
                if not out[m]:
                    del out[m]
        return out

    def el_add(self, a: Element, b: Element, coeff: int = 1) -> Element:
        out = dict(a)
        for m, c in b.items():
            v = (out.get(m, 0) + coeff * c) % self.p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    def el_mul(self, a: Element, b: Element) -> Element:
        out: Element = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m, s = self.mul_monomials(m1, m2)
                if m is None or s == 0:
                    continue
                v = (out.get(m, 0) + c1 * c2 * s) % self.p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    def el_pow(self, a: Element, e: int) -> Element:
        out: Element = {(): 1}
        power = dict(a)
        while e:
            if e & 1:
                out = self.el_mul(out, power)
            e >>= 1
            if e:
                power = self.el_mul(power, power)
        return out

    # -- bases ----------------------------------------------------------
    def monomial_basis(self, degree: int) -> list[Monomial]:
        """All kind-respecting monomials of one internal degree, sorted."""
        if degree > self.N:
            raise ValueError(f"degree {degree} above presentation bound {self.N}")
        if degree < 0:
            return []
        if degree in self._basis_cache:
            return self._basis_cache[degree]
        out: list[Monomial] = []
        if self.square_zero:
            if degree == 0:
                out = [()] + [((i, 1),) for i, g in enumerate(self.gens) if g.degree == 0]
            else:
                out = [((i, 1),) for i, g in enumerate(self.gens) if g.degree == degree]
        else:
            idem = [i for i, g in enumerate(self.gens) if g.idempotent]
            positive: list[Monomial] = []

            def rec(idx: int, remaining: int, acc: list):
                if remaining == 0:
                    positive.append(tuple(acc))
                    return
                if idx >= len(self.gens):
                    return
                rec(idx + 1, remaining, acc)
                g = self.gens[idx]
                if g.degree <= 0:
                    return
                cap = g.max_exponent()
                e = 1
                while e * g.degree <= remaining and (cap is None or e <= cap):
                    rec(idx + 1, remaining - e * g.degree, acc + [(idx, e)])
                    e += 1

            rec(0, degree, [])
            for m in positive:
                for mask in range(1 << len(idem)):
                    extra = [(idem[k], 1) for k in range(len(idem)) if (mask >> k) & 1]
                    out.append(tuple(sorted(list(m) + extra)))
        out = sorted(set(out))
        if degree > 0:
            out = [m for m in out if m]
        self._basis_cache[degree] = out
        return out

    def bigraded_basis(self, filtration: int, degree: int) -> list[Monomial]:
        return [m for m in self.monomial_basis(degree) if self.filtration(m) == filtration]

    def reduced_basis(self, degree: int) -> list[Monomial]:
        """Augmentation-reduced monomials: everything but the unit.

        Degree 0 is nonempty only for idempotent generators (u is a
        legitimate reduced slot in the Hochschild complex of F_p[u]).
        """
        if degree < 0:
            return []
        return [m for m in self.monomial_basis(degree) if m]

    def poincare_series(self, max_degree: int | None = None) -> list[int]:
        """dim_d for 0 <= d <= bound, by generating-function convolution."""
        n = self.N if max_degree is None else max_degree
        series = [0] * (n + 1)
        series[0] = 1
        if self.square_zero:
            for g in self.gens:
                if g.degree <= n:
                    series[g.degree] += 1
            return series
        for g in self.gens:
            factor = [0] * (n + 1)
            cap = g.max_exponent()
            if g.idempotent:
                factor[0] = 2
            else:
                e = 0
                while e * g.degree <= n and (cap is None or e <= cap):
                    factor[e * g.degree] += 1
                    if g.degree == 0:
                        break
                    e += 1
            series = _convolve(series, factor, n)
        return series

    def bigraded_series(self, max_degree: int | None = None) -> dict[tuple[int, int], int]:
        """dims indexed by (filtration, total degree), by convolution."""
        n = self.N if max_degree is None else max_degree
        series: dict[tuple[int, int], int] = {(0, 0): 1}
        for g in self.gens:
            factor: dict[tuple[int, int], int] = {}
            cap = g.max_exponent()
            if g.idempotent:
                factor[(0, 0)] = 2
            else:
                e = 0
                while e * g.degree <= n and (cap is None or e <= cap):
                    factor[(e * g.filtration, e * g.degree)] = (
                        factor.get((e * g.filtration, e * g.degree), 0) + 1
                    )
                    if g.degree == 0:
                        break
                    e += 1
            new: dict[tuple[int, int], int] = {}
            for (s1, t1), c1 in series.items():
                for (s2, t2), c2 in factor.items():
                    if t1 + t2 <= n:
                        key = (s1 + s2, t1 + t2)
                        new[key] = new.get(key, 0) + c1 * c2
            series = new
        if self.square_zero:
            raise ValueError("bigraded series not defined for square-zero presentations")
        return series

    # -- divided powers --------------------------------------------------
    def gamma(self, base_name: str, j: int) -> Element:
        """gamma_j of the divided tower whose gamma_1 member is base_name.

        Tower members carry the names produced by expand_divided, so they
        are looked up as g{p^i}(base_name).
        """
        if j == 0:
            return {(): 1}
        exps: dict[int, int] = {}
        jj, i = j, 0
        while jj:
            a = jj % self.p
            if a:
                gname = base_name if i == 0 else f"g{self.p ** i}({base_name})"
                if gname not in self.index:
                    raise ValueError(f"gamma_{j}({base_name}) above the degree bound")
                exps[self.index[gname]] = a
            jj //= self.p
            i += 1
        c = gamma_coefficient(j, self.p)
        return {tuple(sorted(exps.items())): fplin.PrimeField(self.p).inv(c)}


def _convolve(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if i + j > n:
                    break
                out[i + j] += x * y
    return out


def tensor_series(a: list[int], b: list[int], n: int) -> list[int]:
    """Poincare series of a tensor product = convolution of the factors."""
    return _convolve(a + [0] * (n + 1 - len(a)), b + [0] * (n + 1 - len(b)), n)


# ---------------------------------------------------------------------------
# comodule structure over the dual Steenrod algebra

class CoactionTable:
    """Per-generator coaction values, extended multiplicatively.

    nu(g) is a list of (dual-algebra element, monomial) pairs; dual
    elements are dicts MilnorMonomial -> coefficient in the conjugated
    alphabet.  The extension is as an algebra map.
    """

    def __init__(self, presentation: AlgebraPresentation, entries: Mapping[str, list] | None = None):
        self.A = presentation
        self.entries: dict[int, list[tuple[dict, Monomial]]] = {}
        for name, terms in (entries or {}).items():
            self.set_gen(name, terms)
        self._memo: dict[Monomial, dict] = {}

    def set_gen(self, name: str, terms: Iterable[tuple[Mapping[MilnorMonomial, int], Monomial]]) -> None:
        idx = self.A.index[name]
        self.entries[idx] = [(dict(a), m) for a, m in terms]
        self._memo = {}

    def set_primitive(self, name: str) -> None:
        idx = self.A.index[name]
        self.entries[idx] = [({milnor_one(): 1}, self.A.gen_monomial(name))]
        self._memo = {}

    def has_gen(self, name: str) -> bool:
        return self.A.index[name] in self.entries

    def _tensor_mul(self, x: dict, y: dict) -> dict:
        p = self.A.p
        out: dict = {}
        for (a1, m1), c1 in x.items():
            for (a2, m2), c2 in y.items():
                sign = 1
                if p != 2 and (self.A.degree(m1) % 2) and (a2.degree(p) % 2):
                    sign = -1
                a, sa = milnor_mul(a1, a2, p)
                if a is None:
                    continue
                m, sm = self.A.mul_monomials(m1, m2)
                if m is None or sm == 0:
                    continue
                key = (a, m)
                v = (out.get(key, 0) + c1 * c2 * sign * sa * sm) % p
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def nu_monomial(self, m: Monomial) -> dict:
        """Coaction on a basis monomial: dict[(MilnorMonomial, Monomial)] -> coeff."""
        if m in self._memo:
            return self._memo[m]
        p = self.A.p
        acc = {(milnor_one(), ()): 1}
        for i, e in m:
            if i not in self.entries:
                raise KeyError(
                    f"coaction not available for generator {self.A.gens[i].name}"
                )
            gen_nu: dict = {}
            for a_elt, mono in self.entries[i]:
                for mm, cc in a_elt.items():
                    key = (mm, mono)
                    gen_nu[key] = (gen_nu.get(key, 0) + cc) % p
            term = gen_nu
            ee = e
            powacc: dict | None = None
            while ee:
                if ee & 1:
                    powacc = term if powacc is None else self._tensor_mul(powacc, term)
                ee >>= 1
                if ee:
                    term = self._tensor_mul(term, term)
            acc = self._tensor_mul(acc, powacc)
        self._memo[m] = acc
        return acc

    def nu(self, elt: Element) -> dict:
        p = self.A.p
        out: dict = {}
        for m, c in elt.items():
            for key, v in self.nu_monomial(m).items():
                w = (out.get(key, 0) + c * v) % p
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
        return out

    def terms_for(self, elt: Element) -> list[tuple[dict, Element]]:
        """Coaction regrouped as sum of (dual element) x (algebra element)."""
        grouped: dict[MilnorMonomial, Element] = {}
        for (a, m), c in self.nu(elt).items():
            grouped.setdefault(a, {})
            grouped[a][m] = (grouped[a].get(m, 0) + c) % self.A.p
        out = []
        for a, e in grouped.items():
            e = {m: c for m, c in e.items() if c}
            if e:
                out.append(({a: 1}, e))
        return out

    def steenrod_action(self, r: int, elt: Element) -> Element:
        """Dual Steenrod operation Sq^r_* (p = 2) from the coaction."""
        from .steenrod import dual_action

        terms = [({a: c}, m) for (a, m), c in self.nu(elt).items()]
        acted = dual_action(terms, r, self.A.p)
        out: Element = {}
        for m, c in acted.items():
            v = (out.get(m, 0) + c) % self.A.p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out


def comodule_primitives(
    a: AlgebraPresentation,
    c: CoactionTable,
    degree: int,
    monomials: Sequence[Monomial] | None = None,
) -> list[Element]:
    """Basis of {x : nu(x) = 1 (x) x} in one degree, via a kernel computation."""
    basis = list(monomials) if monomials is not None else a.monomial_basis(degree)
    if not basis:
        return []
    pos = {m: j for j, m in enumerate(basis)}
    rows: dict[tuple, dict[int, int]] = {}
    for j, m in enumerate(basis):
        nu = dict(c.nu_monomial(m))
        key1 = (milnor_one(), m)
        nu[key1] = (nu.get(key1, 0) - 1) % a.p
        for key, v in nu.items():
            if v % a.p:
                rows.setdefault(key, {})[j] = v % a.p
    mat = fplin.SparseMat.from_rows(list(rows.values()), len(basis), a.p)
    out = []
    for vec in fplin.kernel_basis(mat):
        out.append({basis[j]: v for j, v in vec.to_dict().items()})
    return out


# ---------------------------------------------------------------------------
# fiberwise coproduct data (Hopf algebra over the filtration-0 base)

class HopfData:
    """Coproducts of the positive-filtration generators over the base.

    Tensors are canonicalized as (base monomial) * (u (x) v) with u, v
    monomials in positive-filtration generators; base elements act as
    scalars and move across the tensor sign-free only up to the usual
    Koszul rule, which is applied on the way.
    """

    def __init__(self, presentation: AlgebraPresentation):
        self.A = presentation
        self.entries: dict[int, dict] = {}  # gen -> dict[(lam,u,v)] -> coeff

    def set_primitive(self, name: str) -> None:
        i = self.A.index[name]
        g = self.A.gen_monomial(name)
        self.entries[i] = {((), g, ()): 1, ((), (), g): 1}

    def set_divided(self, name: str, base_name: str, k: int) -> None:
        """gamma_k member of a divided tower: psi = sum gamma_i (x) gamma_j."""
        i = self.A.index[name]
        out: dict = {}
        for a in range(0, k + 1):
            left = self.A.gamma(base_name, a)
            right = self.A.gamma(base_name, k - a)
            for lm, lc in left.items():
                for rm, rc in right.items():
                    key = ((), lm, rm)
                    v = (out.get(key, 0) + lc * rc) % self.A.p
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        self.entries[i] = out

    def _split_base(self, m: Monomial) -> tuple[Monomial, Monomial]:
        base = tuple((i, e) for i, e in m if self.A.gens[i].filtration == 0)
        fiber = tuple((i, e) for i, e in m if self.A.gens[i].filtration != 0)
        return base, fiber

    def _tensor_mul(self, x: dict, y: dict) -> dict:
        p = self.A.p
        out: dict = {}
        for (l1, u1, v1), c1 in x.items():
            for (l2, u2, v2), c2 in y.items():
                sign = 1
                if p != 2:
                    # move l2 past u1 (x) v1, then u2 past v1
                    d_l2 = self.A.degree(l2)
                    if d_l2 % 2 and (self.A.degree(u1) + self.A.degree(v1)) % 2:
                        sign = -sign
                    if self.A.degree(v1) % 2 and self.A.degree(u2) % 2:
                        sign = -sign
                lam, s0 = self.A.mul_monomials(l1, l2)
                if lam is None:
                    continue
                u, s1 = self.A.mul_monomials(u1, u2)
                if u is None:
                    continue
                v, s2 = self.A.mul_monomials(v1, v2)
                if v is None:
                    continue
                key = (lam, u, v)
                c = (out.get(key, 0) + c1 * c2 * sign * s0 * s1 * s2) % p
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
        return out

    def psi_monomial(self, m: Monomial) -> dict:
        base, fiber = self._split_base(m)
        acc = {(base, (), ()): 1}
        for i, e in fiber:
            if i not in self.entries:
                raise KeyError(f"no coproduct entry for generator {self.A.gens[i].name}")
            term = self.entries[i]
            powacc: dict | None = None
            ee = e
            while ee:
                if ee & 1:
                    powacc = term if powacc is None else self._tensor_mul(powacc, term)
                ee >>= 1
                if ee:
                    term = self._tensor_mul(term, term)
            acc = self._tensor_mul(acc, powacc)
        return acc

    def psi_reduced(self, m: Monomial) -> dict:
        """psi(m) - m (x) 1 - 1 (x) m in canonical coordinates."""
        p = self.A.p
        out = dict(self.psi_monomial(m))
        base, fiber = self._split_base(m)
        for key in [(base, fiber, ()), (base, (), fiber)]:
            v = (out.get(key, 0) - 1) % p
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return out


def coalgebra_primitives(
    h: HopfData,
    degree: int,
    monomials: Sequence[Monomial] | None = None,
) -> list[Element]:
    """Primitives of the reduced coproduct over the base, one degree.

    Filtration-0 monomials are excluded by the counit convention, so the
    computation runs over the positive-filtration span only.
    """
    a = h.A
    basis = [m for m in (monomials if monomials is not None else a.monomial_basis(degree))
             if a.filtration(m) > 0]
    if not basis:
        return []
    rows: dict[tuple, dict[int, int]] = {}
    for j, m in enumerate(basis):
        for key, v in h.psi_reduced(m).items():
            if v % a.p:
                rows.setdefault(key, {})[j] = v % a.p
    mat = fplin.SparseMat.from_rows(list(rows.values()), len(basis), a.p)
    return [{basis[j]: v for j, v in vec.to_dict().items()} for vec in fplin.kernel_basis(mat)]
