"""Morse and Novikov complexes from declared critical-point and count data.

Instances declare critical points with indices and, for each pair (p, q)
with index(p) = index(q) + 1, the signed count of connecting flow lines:
an integer for real-valued Morse data, a polynomial in t (graded by how far
the line descends in the infinite cyclic cover) for circle-valued data.
The builders assemble the boundary matrices and validate d^2 = 0; they
never compute counts from geometry.
"""
from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    BasedChainComplex,
    ChainMap,
    Tower,
    base_change,
    homology_ranks,
    lift_to_polynomials,
    truncation_tower,
    validate_complex,
)
from .errors import (
    IndexMismatch,
    InsufficientDataOrder,
    MissingData,
    RingMismatch,
    ShapeMismatch,
)
from .matrices import Matrix
from .polynomial import LaurentPolynomial
from .rings import ZZ
from .series import DEFAULT_ORDER


@dataclass(frozen=True)
class CriticalPoint:
    label: str
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise IndexMismatch(f"critical point {self.label} has negative index")


def _points_by_index(points):
    labels = [p.label for p in points]
    if len(set(labels)) != len(labels):
        raise ShapeMismatch("duplicate critical point labels")
    by_index: dict[int, list[str]] = {}
    for p in points:
        by_index.setdefault(p.index, []).append(p.label)
    return by_index


class MorseIncidence:
    """Signed flow-line counts n(p, q) between index-adjacent critical points."""

    def __init__(self, points, entries):
        self.points = tuple(points)
        index_of = {p.label: p.index for p in self.points}
        clean = {}
        for (src, dst), n in dict(entries).items():
            if src not in index_of or dst not in index_of:
                raise ShapeMismatch(f"incidence between unknown points ({src}, {dst})")
            if n == 0:
                continue
            if index_of[src] != index_of[dst] + 1:
                raise IndexMismatch(
                    f"n({src}, {dst}) nonzero but indices are "
                    f"{index_of[src]} and {index_of[dst]}"
                )
            clean[(src, dst)] = int(n)
        self.entries = clean


class NovikovIncidence:
    """t-graded flow-line counts n(p, q) as integer polynomials, valid mod t^N_data."""

    def __init__(self, points, entries, n_data=DEFAULT_ORDER, allow_negative_powers=False):
        self.points = tuple(points)
        self.n_data = int(n_data)
        self.allow_negative_powers = bool(allow_negative_powers)
        if self.n_data < 1:
            raise InsufficientDataOrder("declared data order must be at least 1")
        index_of = {p.label: p.index for p in self.points}
        clean = {}
        for (src, dst), poly in dict(entries).items():
            if src not in index_of or dst not in index_of:
                raise ShapeMismatch(f"incidence between unknown points ({src}, {dst})")
            if isinstance(poly, int):
                poly = LaurentPolynomial((poly,))
            if not isinstance(poly, LaurentPolynomial):
                raise RingMismatch(f"incidence n({src}, {dst}) must be an integer polynomial")
            if poly.is_zero:
                continue
            if index_of[src] != index_of[dst] + 1:
                raise IndexMismatch(
                    f"n({src}, {dst}) nonzero but indices are "
                    f"{index_of[src]} and {index_of[dst]}"
                )
            if poly.val < 0 and not self.allow_negative_powers:
                raise RingMismatch(
                    f"n({src}, {dst}) = {poly} has negative powers of t; "
                    "the standard-lift convention forbids them "
                    "(set allow_negative_powers to override)"
                )
            clean[(src, dst)] = poly
        self.entries = clean


def _assemble(points, entries, ring, coerce):
    by_index = _points_by_index(points)
    top = max(by_index) if by_index else 0
    bases = [tuple(by_index.get(k, ())) for k in range(top + 1)]
    pos = {label: i for basis in bases for i, label in enumerate(basis)}
    deg = {}
    for p in points:
        deg[p.label] = p.index
    bnd = {}
    for k in range(1, top + 1):
        rows, cols = bases[k - 1], bases[k]
        if not rows or not cols:
            continue
        data = [[coerce(0) for _ in cols] for _ in rows]
        for (src, dst), n in entries.items():
            if deg[src] == k:
                data[pos[dst]][pos[src]] = coerce(n)
        bnd[k] = Matrix(data, ncols=len(cols))
    return BasedChainComplex(ring, bases, bnd)


def build_morse_complex(points, inc: MorseIncidence) -> BasedChainComplex:
    """Free abelian complex on the critical points; d p = sum n(p,q) q."""
    if not isinstance(inc, MorseIncidence):
        inc = MorseIncidence(points, inc)
    return _assemble(points, inc.entries, ZZ, int)


def build_novikov_complex(points, inc: NovikovIncidence, order=DEFAULT_ORDER) -> BasedChainComplex:
    """Free complex over Z[[t]] mod t^order on the critical points.

    order may not exceed the declared validity order of the incidence data;
    the truncation both caps reports and guards against fabricating
    coefficients the instance never declared.
    """
    if order > inc.n_data:
        raise InsufficientDataOrder(
            f"order {order} exceeds the declared data order {inc.n_data}"
        )
    from .rings import series_ring

    ring = series_ring("Z", order, laurent=inc.allow_negative_powers)
    return _assemble(points, inc.entries, ring, ring.coerce)


def truncate_novikov(c: BasedChainComplex, n: int) -> BasedChainComplex:
    """Reduce a Novikov complex mod t^n, preserving the basis."""
    if c.ring.kind != "series":
        raise RingMismatch("truncate_novikov expects a complex over a series ring")
    if n > c.ring.order:
        raise InsufficientDataOrder(
            f"truncation at t^{n} exceeds the complex's order {c.ring.order}"
        )
    return base_change(c, "mod", order=n)


def novikov_tower(c: BasedChainComplex, n_max: int) -> Tower:
    """The string of truncations mod t^1, ..., t^n_max."""
    if c.ring.kind != "series":
        raise RingMismatch("novikov_tower expects a complex over a series ring")
    if n_max > c.ring.order:
        raise InsufficientDataOrder(
            f"tower height {n_max} exceeds the complex's order {c.ring.order}"
        )
    return truncation_tower(c, n_max)


def novikov_homology_ranks(c: BasedChainComplex) -> list[int]:
    """Homology ranks over Q(t), one per degree.

    Exact because incidence entries are polynomials declared valid beyond
    the stored truncation, so lifting the stored coefficients recovers them.
    """
    return homology_ranks(c)


@dataclass(frozen=True)
class MNInstance:
    """Algebraic shadow of a circle-valued Morse system, as declared data.

    Bundles the Novikov incidence data with whatever else the instance
    author can supply: a simplicial model of the half-infinite cover piece
    over Z[t], closed-orbit records, a homological descent system, homology
    monodromy matrices, or an explicit comparison chain map.
    """

    name: str
    dim: int
    points: tuple
    incidence: NovikovIncidence
    n_data: int = DEFAULT_ORDER
    simplicial: BasedChainComplex | None = None
    orbits: object | None = None
    descent: object | None = None
    homology: list | None = None
    comparison: dict | None = None  # degree -> Matrix over Z[t]

    def novikov_complex(self, order=None) -> BasedChainComplex:
        return build_novikov_complex(self.points, self.incidence, order or self.n_data)

    def validate(self, order=None):
        """Check every embedded complex and map mod t^min(order, N_data)."""
        order = min(order or self.n_data, self.n_data)
        nov = self.novikov_complex(order)
        report = validate_complex(nov)
        if not report.ok:
            return report
        if self.simplicial is not None:
            report = validate_complex(self.simplicial)
            if not report.ok:
                return report
        if self.descent is not None:
            self.descent.validate()
        return report

    def comparison_map(self, order=None) -> ChainMap:
        """The declared Novikov-to-simplicial comparison, over Q(t)."""
        if self.comparison is None or self.simplicial is None:
            raise MissingData(f"instance {self.name} declares no comparison map")
        nov = lift_to_polynomials(self.novikov_complex(order or self.n_data))
        mats = {k: m for k, m in self.comparison.items()}
        src = base_change(nov, "rationalize")
        tgt = base_change(self.simplicial, "rationalize")
        mats = {k: m.map(tgt.ring.coerce) for k, m in mats.items()}
        return ChainMap(src, tgt, mats)

    def first_iso_check(self, order=None) -> bool:
        """Novikov homology ranks equal simplicial ranks over Q(t)."""
        if self.simplicial is None:
            raise MissingData(f"instance {self.name} has no simplicial complex")
        nov = self.novikov_complex(order or self.n_data)
        a = novikov_homology_ranks(nov)
        b = homology_ranks(self.simplicial)
        width = max(len(a), len(b))
        a = a + [0] * (width - len(a))
        b = b + [0] * (width - len(b))
        return a == b

    def euler_check(self) -> bool:
        """Euler characteristics over Q(t) agree (weaker bookkeeping check)."""
        if self.simplicial is None:
            raise MissingData(f"instance {self.name} has no simplicial complex")
        from .complexes import euler_characteristic

        nov = self.novikov_complex(self.n_data)
        return euler_characteristic(nov) == euler_characteristic(self.simplicial)
