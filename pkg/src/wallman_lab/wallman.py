"""Ultrafilter enumeration and the represented space of a distributive lattice.

In a finite lattice every filter is principal, so filters are exactly the
up-sets of nonzero elements and ultrafilters the up-sets of atoms; the
enumeration below still re-checks the defining properties.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LatticeNotDistributive, NotABase, NotBoolean, NonSingletonFiber
from .lattice import FiniteLattice, is_distributive, validate as validate_lattice
from .spaces import FiniteSpace, closed_set_lattice, is_connected, is_discrete, make_space, points_of


@dataclass(frozen=True)
class Filter:
    members: frozenset

    def __contains__(self, a):
        return a in self.members


@dataclass(frozen=True)
class WallmanSpace:
    lattice: FiniteLattice
    points: tuple  # tuple of Filter, canonical order (sorted member sets)
    base: tuple  # base[a] = bitmask of points containing element a

    def space(self):
        return make_space(len(self.points), set(self.base))


def filters(L):
    """All filters: up-sets of nonzero elements, sorted by member set."""
    out = []
    for a in L.elements():
        if a == L.bottom:
            continue
        members = frozenset(b for b in L.elements() if L.leq(a, b))
        out.append(Filter(members))
    uniq = {f.members: f for f in out}
    return sorted(uniq.values(), key=lambda f: sorted(f.members))


def is_filter(L, members):
    if L.bottom in members or not members:
        return False
    for a in members:
        for b in members:
            if L.meet[a][b] not in members:
                return False
        for b in L.elements():
            if L.leq(a, b) and b not in members:
                return False
    return True


def ultrafilters(L):
    """Maximal filters, canonical order."""
    fs = filters(L)
    out = [
        f
        for f in fs
        if not any(g is not f and f.members < g.members for g in fs)
    ]
    return sorted(out, key=lambda f: sorted(f.members))


def wallman_space(L):
    """The represented space: ultrafilter points with closed base c(a)."""
    ok, _ = is_distributive(L)
    if not ok:
        raise LatticeNotDistributive("Wallman construction needs a distributive lattice")
    points = tuple(ultrafilters(L))
    base = []
    for a in L.elements():
        mask = 0
        for i, u in enumerate(points):
            if a in u:
                mask |= 1 << i
        base.append(mask)
    base = tuple(base)
    for a in L.elements():
        for b in L.elements():
            assert base[L.meet[a][b]] == base[a] & base[b]
            assert base[L.join[a][b]] == base[a] | base[b]
    assert base[L.bottom] == 0 and base[L.top] == (1 << len(points)) - 1
    return WallmanSpace(L, points, base)


def canonical_hom_report(L):
    """Injectivity of a -> c(a) versus disjunctivity; the two must agree."""
    from .lattice import is_disjunctive

    W = wallman_space(L)
    injective = len(set(W.base)) == L.n
    disjunctive, _ = is_disjunctive(L)
    return {
        "is_injective": injective,
        "is_disjunctive": disjunctive,
        "agree": injective == disjunctive,
    }


def hausdorff_normal_report(L):
    """Hausdorffness of the represented space versus lattice normality."""
    from .lattice import is_normal

    W = wallman_space(L)
    X = W.space()
    normal, _ = is_normal(L)
    return {"wL_hausdorff": is_discrete(X), "L_normal": normal}


def wallman_connected(L):
    W = wallman_space(L)
    X = W.space()
    return is_connected(X, X.full)


def self_representation_check(X):
    """Is X homeomorphic to the representation of its own closed-set lattice?

    The map sends an ultrafilter to the unique point in its intersection;
    returns (bool, diagnostic).
    """
    fam = X.closed_sorted()
    L = closed_set_lattice(X)
    W = wallman_space(L)
    point_map = []
    for u in W.points:
        inter = X.full
        for a in u.members:
            inter &= fam[a]
        if bin(inter).count("1") != 1:
            return False, f"ultrafilter intersection {points_of(inter)} is not a singleton"
    # map u -> its point; check bijectivity and that base sets mirror closed sets
        point_map.append(inter.bit_length() - 1)
    if sorted(point_map) != list(range(X.point_count)):
        return False, "ultrafilter-to-point map is not a bijection"
    image_closed = set()
    for a in L.elements():
        img = 0
        for i in range(len(W.points)):
            if W.base[a] >> i & 1:
                img |= 1 << point_map[i]
        image_closed.add(img)
    if image_closed != set(X.closed):
        return False, "base sets do not map onto the closed family"
    return True, None


def is_boolean(L):
    ok, _ = is_distributive(L)
    if not ok:
        return False
    for a in L.elements():
        if not any(
            L.meet[a][b] == L.bottom and L.join[a][b] == L.top for b in L.elements()
        ):
            return False
    return True


def atoms(L):
    return [
        a
        for a in L.elements()
        if a != L.bottom
        and not any(b != L.bottom and b != a and L.leq(b, a) for b in L.elements())
    ]


def stone_space(B):
    """Wallman space of a Boolean algebra; verifies clopenness and atom count."""
    if not is_boolean(B):
        raise NotBoolean("input is not a finite Boolean algebra")
    W = wallman_space(B)
    npts = len(W.points)
    full = (1 << npts) - 1
    for a in B.elements():
        comp = next(
            b for b in B.elements() if B.meet[a][b] == B.bottom and B.join[a][b] == B.top
        )
        assert W.base[comp] == full & ~W.base[a]
    assert npts == len(atoms(B))
    return W


def boolean_subalgebra_generated(universe_size, family):
    """Least subalgebra of the power set containing the family, as a lattice."""
    full = (1 << universe_size) - 1
    fam = {0, full}
    fam.update(m & full for m in family)
    changed = True
    while changed:
        changed = False
        items = list(fam)
        for a in items:
            if full & ~a not in fam:
                fam.add(full & ~a)
                changed = True
            for b in items:
                for c in (a | b, a & b):
                    if c not in fam:
                        fam.add(c)
                        changed = True
    members = sorted(fam, key=lambda m: (bin(m).count("1"), m))
    idx = {m: i for i, m in enumerate(members)}
    k = len(members)
    names = tuple("{" + ",".join(str(p) for p in points_of(m)) + "}" for m in members)
    meet = tuple(tuple(idx[members[i] & members[j]] for j in range(k)) for i in range(k))
    join = tuple(tuple(idx[members[i] | members[j]] for j in range(k)) for i in range(k))
    return validate_lattice(names, meet, join, 0, k - 1), members


def alexandroff_preimage(X, family):
    """Zero-dimensional preimage: Stone space of the generated subalgebra.

    Returns (Y, f) with f continuous and onto X; the point of f(u) is the
    unique one in the intersection of the closures of u's members.
    """
    algebra, members = boolean_subalgebra_generated(X.point_count, family)
    closed_in_algebra = all(c in members for c in X.closed)
    if not closed_in_algebra:
        # the generated algebra must still present every closed set
        fam = set(members)
        for c in X.closed:
            acc = X.full
            for b in fam:
                if c & ~b == 0:
                    acc &= b
            if acc != c:
                raise NotABase("generated algebra cannot present every closed set")
    W = stone_space(algebra)
    Y = W.space()
    f = []
    for u in W.points:
        inter = X.full
        for a in u.members:
            inter &= X.closure(members[a])
        if bin(inter).count("1") != 1:
            raise NonSingletonFiber(
                f"intersection {points_of(inter)} for ultrafilter {sorted(u.members)}"
            )
        f.append(inter.bit_length() - 1)
    from .spaces import is_continuous, is_surjective

    assert is_continuous(f, Y, X)
    assert is_surjective(f, Y, X)
    full_y = (1 << Y.point_count) - 1
    for a in algebra.elements():
        comp_elem = next(
            b
            for b in algebra.elements()
            if algebra.meet[a][b] == algebra.bottom and algebra.join[a][b] == algebra.top
        )
        assert W.base[comp_elem] == full_y & ~W.base[a]  # base sets are clopen
    return Y, f
