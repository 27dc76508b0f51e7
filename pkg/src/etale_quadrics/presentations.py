"""Graded ranks of finitely presented commutative rings, degree by degree.

A presentation lists generators with their (even) cohomological degrees
and homogeneous integer-coefficient relations.  The degree-k component of
the quotient is the cokernel of the integer matrix whose columns are all
products relation * monomial landing in degree k, computed by Smith normal
form over the monomial basis; coefficients are the 2-adic integers ("Z2",
free monomial module) or the field of two elements ("F2").

Relations in scope are few and degrees bounded, so exhaustive monomial
enumeration is exact and there is no need for any rewriting theory.

Text format (one item per line, '#' starts a comment):

    coeff Z2            # or F2
    gen h 2             # name and degree
    rel h^4             # integer polynomial in the generators
    rel 2*c1
    rel h*c0 - h^4

Polynomials are sums of terms [integer][*][name[^power][*name...]] with
integer coefficients; no parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .abelian import CyclicSummand, FinAb2Group, GroupHom, cokernel
from .errors import NonHomogeneousRelation, UnknownFamily
from .graded import Graded2Group, GradedSummand
from .quadrics import assemble_cohomology

Term = tuple[tuple[int, ...], int]  # (exponents, coefficient)
Poly = tuple[Term, ...]


@dataclass(frozen=True)
class RingPresentation:
    coefficients: str  # "Z2" | "F2"
    generators: tuple[tuple[str, int], ...]
    relations: tuple[Poly, ...]

    def __post_init__(self):
        if self.coefficients not in ("Z2", "F2"):
            raise ValueError(f"unknown coefficient ring {self.coefficients!r}")
        names = [name for name, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for _, deg in self.generators:
            if deg < 1:
                raise ValueError("generator degrees must be positive")
        for rel in self.relations:
            self._relation_degree(rel)

    def _relation_degree(self, rel: Poly) -> int:
        degs = {self.monomial_degree(exps) for exps, _ in rel}
        if len(degs) != 1:
            raise NonHomogeneousRelation(
                f"relation {format_poly(rel, self.generator_names)} mixes degrees {sorted(degs)}"
            )
        return degs.pop()

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    @property
    def generator_degrees(self) -> tuple[int, ...]:
        return tuple(deg for _, deg in self.generators)

    def monomial_degree(self, exps: tuple[int, ...]) -> int:
        return sum(e * d for e, d in zip(exps, self.generator_degrees))

    def relation_degrees(self) -> tuple[int, ...]:
        return tuple(self._relation_degree(rel) for rel in self.relations)


# ---------------------------------------------------------------------------
# polynomial plumbing


def make_poly(terms: Iterable[Term]) -> Poly:
    acc: dict[tuple[int, ...], int] = {}
    for exps, coeff in terms:
        acc[exps] = acc.get(exps, 0) + coeff
    return tuple(sorted((e, c) for e, c in acc.items() if c))


def monomial_label(exps: tuple[int, ...], names: tuple[str, ...]) -> str:
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


_TERM_FACTOR = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(\d+))?$")


def parse_poly(text: str, names: tuple[str, ...]) -> Poly:
    """Parse an integer polynomial like '2*c1' or 'h*c0 - h^4'."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    # split into signed terms
    chunks = re.findall(r"[+-]?[^+-]+", s)
    terms = []
    for chunk in chunks:
        sign = -1 if chunk.startswith("-") else 1
        body = chunk.lstrip("+-")
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = sign
        exps = [0] * len(names)
        for factor in body.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            m = _TERM_FACTOR.match(factor)
            if not m or m.group(1) not in names:
                raise ValueError(f"unknown factor {factor!r} in {text!r}")
            idx = names.index(m.group(1))
            exps[idx] += int(m.group(2) or 1)
        terms.append((tuple(exps), coeff))
    return make_poly(terms)


def format_poly(poly: Poly, names: tuple[str, ...]) -> str:
    if not poly:
        return "0"
    parts = []
    for exps, coeff in poly:
        mono = monomial_label(exps, names)
        if mono == "1":
            body = str(abs(coeff))
        elif abs(coeff) == 1:
            body = mono
        else:
            body = f"{abs(coeff)}*{mono}"
        parts.append((coeff < 0, body))
    out = parts[0][1] if not parts[0][0] else "-" + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def parse_presentation(text: str) -> RingPresentation:
    coeff = None
    gens: list[tuple[str, int]] = []
    rel_lines: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "coeff":
            coeff = rest
        elif head == "gen":
            name, _, deg = rest.partition(" ")
            gens.append((name.strip(), int(deg)))
        elif head == "rel":
            rel_lines.append(rest)
        else:
            raise ValueError(f"unknown directive {head!r}")
    if coeff is None:
        raise ValueError("missing 'coeff' line")
    names = tuple(name for name, _ in gens)
    relations = tuple(parse_poly(line, names) for line in rel_lines)
    return RingPresentation(coeff, tuple(gens), relations)


def format_presentation(p: RingPresentation) -> str:
    lines = [f"coeff {p.coefficients}"]
    lines += [f"gen {name} {deg}" for name, deg in p.generators]
    lines += [f"rel {format_poly(rel, p.generator_names)}" for rel in p.relations]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# graded ranks


def monomials_of_degree(degrees: tuple[int, ...], k: int) -> list[tuple[int, ...]]:
    """All exponent tuples of total degree k, lexicographically descending."""
    out: list[tuple[int, ...]] = []

    def rec(idx: int, remaining: int, prefix: tuple[int, ...]):
        if idx == len(degrees):
            if remaining == 0:
                out.append(prefix)
            return
        step = degrees[idx]
        for e in range(remaining // step, -1, -1):
            rec(idx + 1, remaining - e * step, prefix + (e,))

    rec(0, k, ())
    return out


def _multiply(poly: Poly, exps: tuple[int, ...]) -> Poly:
    return tuple((tuple(a + b for a, b in zip(e, exps)), c) for e, c in poly)


def poly_mul(a: Poly, b: Poly) -> Poly:
    return make_poly(
        (tuple(x + y for x, y in zip(e1, e2)), c1 * c2)
        for e1, c1 in a
        for e2, c2 in b
    )


def poly_scale(a: Poly, k: int) -> Poly:
    return make_poly((e, k * c) for e, c in a)


def graded_ranks(p: RingPresentation, max_degree: int) -> Graded2Group:
    """Free rank and torsion orders of every degree <= max_degree.

    Degree k is presented on its monomial basis modulo the columns
    relation * monomial; generator labels keep the smallest contributing
    monomial.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    names = p.generator_names
    degrees = p.generator_degrees
    rel_degs = p.relation_degrees()
    base_order = 0 if p.coefficients == "Z2" else 2
    entries = []
    for k in range(max_degree + 1):
        monos = monomials_of_degree(degrees, k)
        if not monos:
            continue
        index = {m: i for i, m in enumerate(monos)}
        module = FinAb2Group(
            tuple(CyclicSummand(base_order, monomial_label(m, names)) for m in monos)
        )
        cols = []
        for rel, rdeg in zip(p.relations, rel_degs):
            if rdeg > k:
                continue
            for m in monomials_of_degree(degrees, k - rdeg):
                col = [0] * len(monos)
                for exps, coeff in _multiply(rel, m):
                    col[index[exps]] += coeff
                cols.append(col)
        if cols:
            domain = FinAb2Group(
                tuple(CyclicSummand(0, f"r{i}") for i in range(len(cols)))
            )
            hom = GroupHom(
                domain,
                module,
                tuple(tuple(col[i] for col in cols) for i in range(len(monos))),
            )
            component, _ = cokernel(hom)
        else:
            component = module
        for sm in component.summands:
            entries.append(
                GradedSummand(
                    degree=k,
                    order=sm.order,
                    label=sm.label,
                    twist=(k // 2) % 2 if k % 2 == 0 else None,
                    algebraic=None,
                )
            )
    return Graded2Group.from_entries(entries)


# ---------------------------------------------------------------------------
# built-in presentations


def _pres(text: str) -> RingPresentation:
    return parse_presentation(text)


def _norm_quadric_presentation(n: int) -> RingPresentation:
    if n < 2:
        raise UnknownFamily(f"norm quadric presentations need n >= 2, got {n}")
    return _pres(
        f"""
        coeff Z2
        gen h 2
        gen rho4 4
        rel h^{2 ** n}
        rel 2*rho4
        rel h*rho4^{2 ** (n - 2)}
        rel rho4*h^{2 ** (n - 1)}
        rel rho4^{2 ** (n - 1)}
        """
    )


_FIXED_FAMILIES = {
    "Q3": """
        coeff Z2
        gen h 2
        gen c1 4
        rel h^4
        rel 2*c1
        rel c1*h
        rel c1^2
        """,
    "Q5": """
        coeff Z2
        gen h 2
        gen c1 4
        rel h^6
        rel 2*c1
        rel c1*h^3
        rel c1^2
        """,
    "Q6": """
        coeff Z2
        gen h 2
        gen c1 4
        gen c0 6
        rel h^7
        rel 2*c1
        rel c1*h^4
        rel c1^2
        rel h*c0 - h^4
        rel c0*c1
        rel c0^2
        """,
}


def _g2_presentation(family: str) -> RingPresentation:
    """Rings attached to the twisted flag variety of the rank-2 exceptional
    group, built from b1 = t1^2 + t1*t2 + t2^2 and b2 = t2^3 (degrees 4, 6)."""
    names = ("t1", "t2")
    b1 = parse_poly("t1^2 + t1*t2 + t2^2", names)
    b2 = parse_poly("t2^3", names)
    gens = (("t1", 2), ("t2", 2))
    if family == "G2_flag_etale":
        rels = (poly_scale(b1, 2), poly_mul(b1, b1), poly_mul(b2, b2), poly_mul(b1, b2))
        return RingPresentation("Z2", gens, rels)
    if family == "G2_flag_chow_mod2":
        rels = (poly_mul(b1, b1), poly_mul(b2, b2), poly_mul(b1, b2))
        return RingPresentation("F2", gens, rels)
    if family == "G2_GT_mod2":
        names_y = ("t1", "t2", "y")
        lift = tuple((e + (0,), c) for e, c in b1)
        lift2 = tuple((e + (0,), c) for e, c in b2)
        ysq = parse_poly("y^2", names_y)
        return RingPresentation("F2", gens + (("y", 6),), (lift, lift2, ysq))
    raise UnknownFamily(family)


def builtin_presentation(family: str, param: Optional[int] = None) -> RingPresentation:
    """Built-in presentations: Q3, Q5, Q6, Q7, norm (with index parameter),
    G2_flag_etale, G2_flag_chow_mod2, G2_GT_mod2.

    The G2 relations are spelled out through b1 = t1^2 + t1*t2 + t2^2 and
    b2 = t2^3: the etale ring is Z2[t1,t2]/(2*b1, b1^2, b2^2, b1*b2) and the
    mod-2 Chow ring drops the 2*b1 relation in favor of coefficient 2.
    """
    if family == "Q7":
        return _norm_quadric_presentation(3)
    if family == "norm":
        if param is None:
            raise UnknownFamily("family 'norm' needs the index parameter")
        return _norm_quadric_presentation(param)
    if family in _FIXED_FAMILIES:
        return _pres(_FIXED_FAMILIES[family])
    if family.startswith("G2_"):
        return _g2_presentation(family)
    raise UnknownFamily(f"unknown presentation family {family!r}")


def presentation_for_quadric(d: int) -> RingPresentation:
    if d == 3:
        return builtin_presentation("Q3")
    if d == 5:
        return builtin_presentation("Q5")
    if d == 6:
        return builtin_presentation("Q6")
    n = (d + 1).bit_length() - 1
    if d == 2**n - 1 and n >= 3:
        return builtin_presentation("norm", n)
    raise UnknownFamily(f"no built-in presentation for dimension {d}")


@dataclass(frozen=True)
class ComparisonResult:
    d: int
    passed: bool
    diffs: tuple[tuple[int, tuple, tuple], ...]  # (degree, presentation, assembly)

    def as_dict(self):
        return {
            "d": self.d,
            "passed": self.passed,
            "diffs": [
                {"degree": deg, "presentation": list(a), "assembly": list(b)}
                for deg, a, b in self.diffs
            ],
        }


def compare_with_assembly(d: int) -> ComparisonResult:
    """Degree-by-degree equality of the built-in ring presentation with the
    additive assembly from the motive decomposition, up to degree 2d."""
    pres = presentation_for_quadric(d)
    table = graded_ranks(pres, 2 * d)
    assembled = assemble_cohomology(d)
    diffs = []
    for deg in range(0, 2 * d + 1):
        a = table.profile(deg)
        b = assembled.profile(deg)
        if a != b:
            diffs.append((deg, a, b))
    return ComparisonResult(d, not diffs, tuple(diffs))
