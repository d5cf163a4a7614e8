"""Homology presentations, coactions and Dyer-Lashof data for the
spectra the spectral sequence engine knows about.

Catalog entries whose homology embeds in the dual Steenrod algebra get
their coactions by restricting the coproduct; the complex image-of-J
spectrum at odd primes carries the explicit lifted-class formulas, and
the real image-of-J spectrum at p = 2 is the square-zero case whose
second tensor factor is produced by the Steenrod-module machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import steenrod as st
from .gca import AlgebraPresentation, CoactionTable, GeneratorSpec
from .steenrod import MilnorMonomial, conjugate, milnor_coproduct, milnor_one

__all__ = ["DyerLashofTable", "SpectrumData", "spectrum", "SPECTRUM_NAMES", "j_module_degrees"]

SPECTRUM_NAMES = ["hf", "hz", "ku", "ko", "tmf", "ell", "ju", "j", "bp", "bp0", "bp1", "bp2", "bp3"]


@dataclass
class DyerLashofTable:
    """Q-operation values on homology generators, plus Bocksteins.

    entries maps (generator name, k) to the value of Q^k on it as an
    element dict of the homology presentation.  The cartan flag enables
    the shortcut Q^odd(square) = 0 at p = 2.
    """

    entries: dict[tuple[str, int], dict] = field(default_factory=dict)
    bockstein: dict[str, dict] = field(default_factory=dict)
    cartan: bool = True

    def lookup(self, gen: str, k: int, is_even_power: bool, degree: int, p: int) -> dict | None:
        if (gen, k) in self.entries:
            return self.entries[(gen, k)]
        if p == 2 and k < degree:
            return {}  # instability: Q^k(x) = 0 below the degree
        if p != 2 and 2 * k < degree:
            return {}
        if p == 2 and self.cartan and k % 2 == 1 and is_even_power:
            return {}  # Q^odd kills squares (Cartan formula)
        return None


@dataclass
class SpectrumData:
    name: str
    p: int
    max_degree: int
    homology: AlgebraPresentation
    coaction: CoactionTable
    milnor_values: dict[str, MilnorMonomial]
    dl: DyerLashofTable
    commutative: bool = True
    gamma_square_zero: frozenset = frozenset()
    flat: bool = True
    squarezero_factor: tuple | None = None  # (label, degree) pairs for j
    kappa_to: str | None = None             # comparison map target (ju -> ku)

    def is_even_power(self, gen_name: str) -> bool:
        m = self.milnor_values.get(gen_name)
        if m is None:
            return False
        return bool(m.xi) and all(e % 2 == 0 for e in m.xi if e) and not m.tau


def _xibname(k: int, e: int) -> str:
    return f"xibar{k}" if e == 1 else f"xibar{k}^{e}"


def _xib(k: int, e: int = 1) -> MilnorMonomial:
    xi = [0] * k
    xi[k - 1] = e
    return MilnorMonomial(tuple(xi), (), True)


def _taub(k: int) -> MilnorMonomial:
    return MilnorMonomial((), (k,), True)


def _recognizer(gen_values: dict[str, MilnorMonomial], presentation: AlgebraPresentation, p: int):
    """Express a conjugated Milnor monomial as a monomial in the generators."""
    xi_gens: dict[int, tuple[str, int]] = {}
    tau_gens: dict[int, str] = {}
    for name, m in gen_values.items():
        if m.tau:
            tau_gens[m.tau[0]] = name
        else:
            k = len(m.xi)
            xi_gens[k] = (name, m.xi[k - 1])

    def recognize(m: MilnorMonomial):
        exps: dict[int, int] = {}
        for k in m.tau:
            if k not in tau_gens:
                return None
            exps[presentation.index[tau_gens[k]]] = 1
        for k, e in enumerate(m.xi, start=1):
            if not e:
                continue
            if k not in xi_gens:
                return None
            name, c = xi_gens[k]
            if e % c:
                return None
            exps[presentation.index[name]] = e // c
        return tuple(sorted(exps.items()))

    return recognize


def _psi_coaction(value: MilnorMonomial, recognize, p: int) -> list[tuple[dict, tuple]]:
    """nu(g) = psi(g) restricted to the subalgebra, as coaction terms."""
    out = []
    for (a, m), c in milnor_coproduct(value, p).items():
        mono = recognize(m)
        if mono is None:
            raise ValueError(f"coproduct term {m} of {value} leaves the subalgebra")
        out.append(({a: c}, mono))
    return out


def _elt(p: int, *terms):
    out: dict[MilnorMonomial, int] = {}
    for m, c in terms:
        c %= p
        if c:
            out[m] = (out.get(m, 0) + c) % p
    return {m: c for m, c in out.items() if c}


def _tau_plain(k: int, p: int) -> dict[MilnorMonomial, int]:
    """The unconjugated tau_k expanded in the conjugated alphabet."""
    return conjugate(MilnorMonomial((), (k,), False), p)


def _mul_dual(a: dict, b: dict, p: int) -> dict:
    out: dict[MilnorMonomial, int] = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m, s = st.milnor_mul(m1, m2, p)
            if m is None:
                continue
            v = (out.get(m, 0) + c1 * c2 * s) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _neg(a: dict, p: int) -> dict:
    return {m: (-c) % p for m, c in a.items()}


def _xi_power_family(p: int, head: list[int], max_degree: int):
    """Generators xibar_k^{head[k-1]} then xibar_k for k > len(head)."""
    gens: list[tuple[str, MilnorMonomial, str]] = []
    for k, e in enumerate(head, start=1):
        m = _xib(k, e)
        if m.degree(p) <= max_degree:
            gens.append((_xibname(k, e), m, "polynomial"))
    k = len(head) + 1
    while _xib(k).degree(p) <= max_degree:
        gens.append((_xibname(k, 1), _xib(k), "polynomial"))
        k += 1
    return gens


def _build_subalgebra_spectrum(
    name: str,
    p: int,
    max_degree: int,
    gen_list: list[tuple[str, MilnorMonomial, str]],
    dl: DyerLashofTable,
    extra_gens: list[GeneratorSpec] | None = None,
    extra_coactions: dict | None = None,
    commutative: bool = True,
    gamma_square_zero: frozenset = frozenset(),
    kappa_to: str | None = None,
) -> SpectrumData:
    specs = []
    values: dict[str, MilnorMonomial] = {}
    for gname, m, kind in gen_list:
        specs.append(GeneratorSpec(gname, m.degree(p), kind))
        values[gname] = m
    for g in extra_gens or []:
        specs.append(g)
    H = AlgebraPresentation(p, specs, max_degree)
    coact = CoactionTable(H)
    recognize = _recognizer(values, H, p)
    for gname, m, kind in gen_list:
        coact.set_gen(gname, _psi_coaction(m, recognize, p))
    for gname, terms in (extra_coactions or {}).items():
        coact.set_gen(gname, terms)
    return SpectrumData(
        name=name,
        p=p,
        max_degree=max_degree,
        homology=H,
        coaction=coact,
        milnor_values=values,
        dl=dl,
        commutative=commutative,
        gamma_square_zero=gamma_square_zero,
        kappa_to=kappa_to,
    )


def _bp_family(p: int, m: int | None, name: str, max_degree: int) -> SpectrumData:
    """BP<m-1>-type spectra: m = None means BP itself (all squares at 2)."""
    dl = DyerLashofTable()
    if p == 2:
        if m is None:
            head: list[int] = []
            gen_list = []
            k = 1
            while _xib(k, 2).degree(2) <= max_degree:
                gen_list.append((_xibname(k, 2), _xib(k, 2), "polynomial"))
                k += 1
        else:
            head = [2] * m
            gen_list = _xi_power_family(2, head, max_degree)
        data = _build_subalgebra_spectrum(name, 2, max_degree, gen_list, dl)
        # squaring chain on the unsquared generators; entries whose target
        # lies beyond the bound are invisible below it and stay absent
        if m is not None:
            k = m + 1
            while _xibname(k, 1) in data.homology.index:
                nxt = _xibname(k + 1, 1)
                if nxt in data.homology.index:
                    dl.entries[(_xibname(k, 1), 2 ** k)] = {data.homology.gen_monomial(nxt): 1}
                k += 1
    else:
        gen_list = []
        k = 1
        while _xib(k).degree(p) <= max_degree:
            gen_list.append((_xibname(k, 1), _xib(k), "polynomial"))
            k += 1
        if m is not None:
            k = m
            while _taub(k).degree(p) <= max_degree:
                gen_list.append((f"taubar{k}", _taub(k), "exterior"))
                k += 1
        data = _build_subalgebra_spectrum(name, p, max_degree, gen_list, dl)
        if m is not None:
            k = m
            while f"taubar{k}" in data.homology.index:
                nxt = f"taubar{k + 1}"
                if nxt in data.homology.index:
                    dl.entries[(f"taubar{k}", p ** k)] = {data.homology.gen_monomial(nxt): 1}
                dl.bockstein[f"taubar{k}"] = (
                    {data.homology.gen_monomial(_xibname(k, 1)): 1}
                    if _xibname(k, 1) in data.homology.index
                    else {}
                )
                k += 1
    data.dl = dl
    return data


def _ko_tmf(name: str, max_degree: int) -> SpectrumData:
    head = [4, 2] if name == "ko" else [8, 4, 2]
    lo = len(head) + 1
    gen_list = _xi_power_family(2, head, max_degree)
    dl = DyerLashofTable()
    data = _build_subalgebra_spectrum(name, 2, max_degree, gen_list, dl)
    k = lo
    while _xibname(k, 1) in data.homology.index:
        nxt = _xibname(k + 1, 1)
        if nxt in data.homology.index:
            dl.entries[(_xibname(k, 1), 2 ** k)] = {data.homology.gen_monomial(nxt): 1}
        k += 1
    return data


def _ju_even(max_degree: int) -> SpectrumData:
    gen_list = _xi_power_family(2, [4, 2], max_degree)
    dl = DyerLashofTable()
    b = GeneratorSpec("b", 3, "exterior")
    data = _build_subalgebra_spectrum(
        "ju",
        2,
        max_degree,
        gen_list,
        dl,
        extra_gens=[b],
        gamma_square_zero=frozenset({"b"}),
        kappa_to="ku",
    )
    data.coaction.set_primitive("b")
    H = data.homology
    dl.entries[("b", 4)] = {}
    dl.entries[(_xibname(1, 4), 5)] = {}
    dl.entries[(_xibname(2, 2), 7)] = {}
    k = 3
    while _xibname(k, 1) in H.index:
        nxt = _xibname(k + 1, 1)
        if nxt in H.index:
            dl.entries[(_xibname(k, 1), 2 ** k)] = {H.gen_monomial(nxt): 1}
        k += 1
    return data


def _ju_odd(p: int, max_degree: int) -> SpectrumData:
    """The odd-primary complex image-of-J: lifted classes, explicit coactions."""
    q = 2 * p - 2
    specs = [GeneratorSpec("b", p * q - 1, "exterior")]
    lifted: list[tuple[str, int, str]] = [(f"xitilde1^{p}", p * q, "polynomial")]
    k = 2
    while 2 * (p ** k - 1) <= max_degree:
        lifted.append((f"xitilde{k}", 2 * (p ** k - 1), "polynomial"))
        k += 1
    k = 2
    while 2 * p ** k - 1 <= max_degree:
        lifted.append((f"tautilde{k}", 2 * p ** k - 1, "exterior"))
        k += 1
    for gname, d, kind in lifted:
        specs.append(GeneratorSpec(gname, d, kind))
    H = AlgebraPresentation(p, specs, max_degree)
    coact = CoactionTable(H)
    one = {milnor_one(): 1}
    tau0 = _tau_plain(0, p)
    tau1 = _tau_plain(1, p)
    mono = H.gen_monomial
    coact.set_gen("b", [(one, mono("b"))])
    coact.set_gen(
        f"xitilde1^{p}",
        [
            (one, mono(f"xitilde1^{p}")),
            (_neg(tau0, p), mono("b")),
            ({_xib(1, p): 1}, ()),
        ],
    )
    if "xitilde2" in H.index:
        coact.set_gen(
            "xitilde2",
            [
                (one, mono("xitilde2")),
                ({_xib(1): 1}, mono(f"xitilde1^{p}")),
                (tau1, mono("b")),
                ({_xib(2): 1}, ()),
            ],
        )
    if "tautilde2" in H.index:
        coact.set_gen(
            "tautilde2",
            [
                (one, mono("tautilde2")),
                ({_taub(0): 1}, mono("xitilde2")),
                ({_taub(1): 1}, mono(f"xitilde1^{p}")),
                (_neg(_mul_dual(tau0, tau1, p), p), mono("b")),
                ({_taub(2): 1}, ()),
            ],
        )
    dl = DyerLashofTable()
    dl.entries[("b", p * q // 2)] = {}
    k = 2
    while f"tautilde{k}" in H.index:
        nxt = f"tautilde{k + 1}"
        if nxt in H.index:
            dl.entries[(f"tautilde{k}", p ** k)] = {mono(nxt): 1}
        xk = f"xitilde{k}"
        dl.bockstein[f"tautilde{k}"] = {mono(xk): 1} if xk in H.index else {}
        k += 1
    return SpectrumData(
        name="ju",
        p=p,
        max_degree=max_degree,
        homology=H,
        coaction=coact,
        milnor_values={},
        dl=dl,
        gamma_square_zero=frozenset({"b"}),
        kappa_to="ell",
    )


@lru_cache(maxsize=None)
def j_module_degrees() -> tuple[int, ...]:
    """Degrees of the rank-17 cyclic module the real image-of-J homology
    splits over, shifted into the square-zero summand (degree 7 bottom)."""
    A2 = st.SubalgebraSpec.A(2)
    M = st.quotient_module(A2, [st.parse_element("Sq1"), st.parse_element("Sq2Sq3")])
    N = st.quotient_module(A2, [st.parse_element("Sq1"), st.parse_element("Sq2")])
    K, _ = st.module_map_kernel(st.parse_element("Sq4"), M, N)
    out: list[int] = []
    for d, n in K.poincare().items():
        out.extend([d - 4 + 7] * n)
    return tuple(sorted(out))


def _j_spectrum(max_degree: int) -> SpectrumData:
    head = [8, 4, 2]
    gen_list = _xi_power_family(2, head, max_degree)
    dl = DyerLashofTable()
    data = _build_subalgebra_spectrum("j", 2, max_degree, gen_list, dl)
    data.flat = False
    data.squarezero_factor = tuple(
        (f"k{i}", d) for i, d in enumerate(j_module_degrees()) if d <= max_degree
    )
    return data


def spectrum(name: str, p: int, max_degree: int) -> SpectrumData:
    """Catalog lookup; raises ValueError for unknown names or bad primes."""
    name = name.lower()
    if name in ("l", "ell"):
        name = "ell"
    if name in ("hf2", "hfp", "hf3"):
        name = "hf"
    if name == "hf":
        return _bp_family(p, 0, "hf", max_degree)
    if name in ("hz", "bp0"):
        return _bp_family(p, 1, "hz", max_degree)
    if name in ("ku", "bp1") and p == 2:
        return _bp_family(2, 2, "ku", max_degree)
    if name in ("ell", "bp1"):
        if p == 2:
            return _bp_family(2, 2, "ku", max_degree)
        return _bp_family(p, 2, "ell", max_degree)
    if name == "bp2":
        return _bp_family(p, 3, "bp2", max_degree)
    if name == "bp3":
        return _bp_family(p, 4, "bp3", max_degree)
    if name == "bp":
        d = _bp_family(p, None, "bp", max_degree)
        d.commutative = False  # only an E4 ring spectrum; skip Hopf-level checks
        return d
    if name == "ko":
        if p != 2:
            raise ValueError("ko is a mod-2 catalog entry")
        return _ko_tmf("ko", max_degree)
    if name == "tmf":
        if p != 2:
            raise ValueError("tmf is a mod-2 catalog entry")
        return _ko_tmf("tmf", max_degree)
    if name == "ju":
        return _ju_even(max_degree) if p == 2 else _ju_odd(p, max_degree)
    if name == "j":
        if p != 2:
            raise ValueError("j coincides with ju at odd primes; use ju")
        return _j_spectrum(max_degree)
    if name == "ku":
        raise ValueError("ku at odd primes has a non-flat initial term; out of range")
    raise ValueError(f"unknown spectrum {name!r}")
