"""Finite topological spaces stored by their closed-set families.

Point sets are int bitmasks throughout; helpers convert to/from index lists
at the boundary.  The closed-set family always contains the empty set and the
full set and is closed under pairwise union and intersection.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    MalformedTables,
    NotABase,
    NotClosed,
    NotContinuous,
    NotSurjective,
    PreconditionViolated,
)
from .lattice import PliandFoursome, validate as validate_lattice

CONTINUA_POINT_CAP = 12


def mask_of(points):
    m = 0
    for p in points:
        m |= 1 << p
    return m


def points_of(mask):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


@dataclass(frozen=True)
class FiniteSpace:
    point_count: int
    closed: frozenset  # frozenset of bitmasks

    @property
    def full(self):
        return (1 << self.point_count) - 1

    def closed_sorted(self):
        return sorted(self.closed, key=lambda m: (bin(m).count("1"), m))

    def is_closed(self, mask):
        return mask in self.closed

    def closure(self, mask):
        acc = self.full
        for c in self.closed:
            if mask & ~c == 0:
                acc &= c
        return acc

    def interior(self, mask):
        return self.full & ~self.closure(self.full & ~mask)


def make_space(point_count, closed_masks):
    """Validate a closed-set family and build the space."""
    full = (1 << point_count) - 1
    fam = frozenset(closed_masks)
    for c in fam:
        if c & ~full:
            raise MalformedTables(f"closed set {c:b} mentions unknown points")
    if 0 not in fam or full not in fam:
        raise MalformedTables("closed family must contain the empty and full sets")
    for a in fam:
        for b in fam:
            if a | b not in fam or a & b not in fam:
                raise MalformedTables("closed family must be closed under union and intersection")
    return FiniteSpace(point_count, fam)


def space_from_sets(point_count, sets_of_points):
    return make_space(point_count, [mask_of(s) for s in sets_of_points])


def discrete_space(n):
    return FiniteSpace(n, frozenset(range(1 << n)))


def generate_space(point_count, generators):
    """Smallest closed-set family containing the generators."""
    full = (1 << point_count) - 1
    fam = {0, full}
    fam.update(m & full for m in generators)
    changed = True
    while changed:
        changed = False
        items = list(fam)
        for a in items:
            for b in items:
                for c in (a | b, a & b):
                    if c not in fam:
                        fam.add(c)
                        changed = True
    return FiniteSpace(point_count, frozenset(fam))


def closed_set_lattice(X):
    """The closed sets under inclusion, as a validated FiniteLattice.

    Element order is (popcount, mask); always distributive.
    """
    fam = X.closed_sorted()
    idx = {m: i for i, m in enumerate(fam)}
    k = len(fam)
    names = tuple("{" + ",".join(str(p) for p in points_of(m)) + "}" for m in fam)
    meet = tuple(tuple(idx[fam[i] & fam[j]] for j in range(k)) for i in range(k))
    join = tuple(tuple(idx[fam[i] | fam[j]] for j in range(k)) for i in range(k))
    return validate_lattice(names, meet, join, 0, k - 1)


def is_connected(X, mask):
    """A closed set is connected iff it has no relative closed 2-partition."""
    if not X.is_closed(mask):
        raise NotClosed(f"{points_of(mask)} is not closed")
    if mask == 0:
        return True
    rel = {c & mask for c in X.closed}
    for a in rel:
        if a == 0 or a == mask:
            continue
        b = mask & ~a
        if b in rel:
            return False
    return True


def continua(X):
    """All nonempty closed connected subsets, sorted canonically."""
    if X.point_count > CONTINUA_POINT_CAP:
        raise PreconditionViolated(f"continua enumeration capped at {CONTINUA_POINT_CAP} points")
    return [c for c in X.closed_sorted() if c != 0 and is_connected(X, c)]


def is_hereditarily_indecomposable(X):
    """Whenever two continua meet, one contains the other."""
    cs = continua(X)
    for i, a in enumerate(cs):
        for b in cs[i + 1 :]:
            if a & b and a & ~b and b & ~a:
                return False, (a, b)
    return True, None


def space_chicane(X, c, d, f, g, closed_list=None):
    """A closed triple (X0, X1, X2) witnessing crookedness for (c,d,f,g), or None.

    Only X0 and X2 need searching: given them, the best X1 is the closure of
    the uncovered remainder, since every X1 constraint is monotone downward.
    """
    fam = closed_list if closed_list is not None else X.closed_sorted()
    for x0 in fam:
        if c & ~x0 or x0 & d:
            continue
        for x2 in fam:
            if d & ~x2 or x0 & x2 or x2 & c:
                continue
            x1 = X.closure(X.full & ~(x0 | x2))
            if (
                x0 | x1 | x2 == X.full
                and x1 & c == 0
                and x1 & d == 0
                and x0 & x1 & g == 0
                and x1 & x2 & f == 0
            ):
                return x0, x1, x2
    return None


def is_crooked_between(X, c, d):
    """Chicane triples exist for every (f, g) pushing away from c and d."""
    if not (X.is_closed(c) and X.is_closed(d)):
        raise PreconditionViolated("c and d must be closed")
    if c == 0 or d == 0 or c & d:
        raise PreconditionViolated("c and d must be disjoint and nonempty")
    fam = X.closed_sorted()
    table = {}
    for f in fam:
        if f & c:
            continue
        for g in fam:
            if g & d:
                continue
            table[(f, g)] = space_chicane(X, c, d, f, g, fam)
    ok = all(v is not None for v in table.values())
    return ok, table


def chicane_condition(X):
    """Every pliand foursome of closed sets has a chicane (space-level search)."""
    fam = X.closed_sorted()
    for c in fam:
        for d in fam:
            if c & d:
                continue
            for f in fam:
                if c & f:
                    continue
                for g in fam:
                    if d & g:
                        continue
                    if space_chicane(X, c, d, f, g, fam) is None:
                        return False, (c, d, f, g)
    return True, None


def is_base(X, family):
    """Every closed set is an intersection of members of the family."""
    fam = set(family)
    if any(b not in X.closed for b in fam):
        return False
    for c in X.closed:
        acc = X.full
        for b in fam:
            if c & ~b == 0:
                acc &= b
        if acc != c:
            return False
    return True


def base_restricted_HI(X, base):
    """Chicane condition with foursomes drawn from a meet-closed base only."""
    base = sorted(set(base), key=lambda m: (bin(m).count("1"), m))
    for a in base:
        for b in base:
            if a & b not in base:
                raise NotABase("base must be closed under intersection")
    if not is_base(X, base):
        raise NotABase("family does not generate all closed sets by intersection")
    fam = X.closed_sorted()
    for c in base:
        for d in base:
            if c & d:
                continue
            for f in base:
                if c & f:
                    continue
                for g in base:
                    if d & g:
                        continue
                    if space_chicane(X, c, d, f, g, fam) is None:
                        return False, (c, d, f, g)
    return True, None


def is_T1(X):
    return all((1 << p) in X.closed for p in range(X.point_count))


def is_discrete(X):
    return len(X.closed) == 1 << X.point_count


def is_continuous(f, X, Y):
    """Preimage of every closed set of Y is closed in X."""
    for c in Y.closed:
        pre = 0
        for p in range(X.point_count):
            if c >> f[p] & 1:
                pre |= 1 << p
        if pre not in X.closed:
            return False
    return True


def is_surjective(f, X, Y):
    return set(f) == set(range(Y.point_count))


def image_mask(f, mask):
    out = 0
    for p in points_of(mask):
        out |= 1 << f[p]
    return out


def is_weakly_confluent(f, X, Y):
    """Every continuum of Y is the image of a continuum of X."""
    if not is_continuous(f, X, Y):
        raise NotContinuous("map is not continuous")
    if not is_surjective(f, X, Y):
        raise NotSurjective("map is not onto")
    images = {image_mask(f, c) for c in continua(X)}
    for c in continua(Y):
        if c not in images:
            return False, c
    return True, None


@lru_cache(maxsize=None)
def all_spaces(n):
    """Every topology on n labeled points, as closed-set families."""
    full = (1 << n) - 1
    others = [m for m in range(1 << n) if m not in (0, full)]
    out = []
    for pick in range(1 << len(others)):
        fam = {0, full}
        fam.update(others[i] for i in range(len(others)) if pick >> i & 1)
        ok = True
        for a in fam:
            for b in fam:
                if a | b not in fam or a & b not in fam:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(FiniteSpace(n, frozenset(fam)))
    return tuple(out)


def pliand_foursome_of_sets(L, fam_index, c, d, f, g):
    """Lift closed-set masks to a PliandFoursome of closed-set-lattice indices."""
    return PliandFoursome(fam_index[c], fam_index[d], fam_index[f], fam_index[g])
