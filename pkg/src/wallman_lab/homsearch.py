"""Constructive mapping machinery between lattices and finite spaces.

Three searches live here: bounded-lattice embeddings, base morphisms
satisfying the join-cover and empty-meet conditions (sufficient for building
continuous surjections), and a brute-force oracle over all point maps.  All
searches are lexicographic-first and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    FiberNotSingleton,
    NonSingletonIntersection,
    NotABase,
)
from .spaces import (
    image_mask,
    is_continuous,
    is_surjective,
    points_of,
)
from .wallman import ultrafilters


@dataclass(frozen=True)
class LMorphism:
    """A base map Y-closed-sets -> X-closed-sets good enough to induce a
    continuous surjection X -> Y: empty goes to empty only, covers go to
    covers, and empty intersections go to empty intersections."""

    base: tuple  # masks of Y, union/intersection-closed, containing 0 and Y
    assignment: dict  # base mask of Y -> closed mask of X


# ---------------------------------------------------------------- embeddings


def find_lattice_embedding(B, L):
    """Injective bound-preserving lattice homomorphism B -> L, or None.

    Backtracking over B's elements in index order, candidate targets in
    ascending order; the first complete assignment is returned.
    """
    order = [B.bottom, B.top] + [
        e for e in B.elements() if e not in (B.bottom, B.top)
    ]
    assignment = {}
    used = set()

    def candidates(e):
        if e == B.bottom:
            return [L.bottom]
        if e == B.top:
            return [L.top]
        return list(L.elements())

    def consistent(e, t):
        trial = dict(assignment)
        trial[e] = t
        for e1, t1 in trial.items():
            for e2, t2 in trial.items():
                m, j = B.meet[e1][e2], B.join[e1][e2]
                if m in trial and L.meet[t1][t2] != trial[m]:
                    return False
                if j in trial and L.join[t1][t2] != trial[j]:
                    return False
        return True

    def extend(i):
        if i == len(order):
            return True
        e = order[i]
        for t in candidates(e):
            if t in used or not consistent(e, t):
                continue
            assignment[e] = t
            used.add(t)
            if extend(i + 1):
                return True
            used.discard(t)
            del assignment[e]
        return False

    if extend(0):
        return dict(assignment)
    return None


def surjection_from_embedding(base_sets, phi, L, X):
    """Map the ultrafilter space of L onto X through an embedded closed base.

    base_sets: masks of X, union/intersection-closed with 0 and the full set,
    indexed as a lattice; phi: index -> element of L, an embedding of that
    base lattice.  The image of ultrafilter p is the unique point of
    the intersection of the base sets whose phi-value lies in p.
    Returns (f, report) with f indexed by ultrafilter position.
    """
    points = ultrafilters(L)
    f = []
    for p in points:
        inter = X.full
        for i, c in enumerate(base_sets):
            if phi[i] in p.members:
                inter &= c
        if bin(inter).count("1") != 1:
            raise FiberNotSingleton(
                f"intersection {points_of(inter)} for ultrafilter {sorted(p.members)}"
            )
        f.append(inter.bit_length() - 1)
    onto = set(f) == set(range(X.point_count))
    preimage_identity = True
    for i, c in enumerate(base_sets):
        pre = 0
        for k in range(len(points)):
            if c >> f[k] & 1:
                pre |= 1 << k
        c_of_phi = 0
        for k, p in enumerate(points):
            if phi[i] in p.members:
                c_of_phi |= 1 << k
        if pre != c_of_phi:
            preimage_identity = False
    report = {"onto": onto, "preimage_identity": preimage_identity}
    return f, report


# ---------------------------------------------------------------- L-morphisms


def _check_base(Y, base):
    base = sorted(set(base), key=lambda m: (bin(m).count("1"), m))
    full = Y.full
    if 0 not in base or full not in base:
        raise NotABase("base must contain the empty and full sets")
    sset = set(base)
    for a in base:
        if a not in Y.closed:
            raise NotABase(f"{points_of(a)} is not closed")
        for b in base:
            if a | b not in sset or a & b not in sset:
                raise NotABase("base must be closed under union and intersection")
    for c in Y.closed:
        acc = full
        for b in base:
            if c & ~b == 0:
                acc &= b
        if acc != c:
            raise NotABase("family does not generate all closed sets by intersection")
    return base


def _min_empty_families(base):
    """Inclusion-minimal subfamilies of the base with empty intersection."""
    n = len(base)
    empties = []
    for mask in range(1, 1 << n):
        inter = ~0
        m = mask
        i = 0
        while m:
            if m & 1:
                inter &= base[i]
            m >>= 1
            i += 1
        if inter == 0:
            empties.append(mask)
    minimal = []
    empties.sort(key=lambda m: bin(m).count("1"))
    for m in empties:
        if not any(p & m == p for p in minimal):
            minimal.append(m)
    return minimal


def find_L_morphism(Y, base, X):
    """Search for an LMorphism from a closed base of Y into Hyp(X), or None.

    Conditions: the empty set maps to the empty set and nothing else does;
    F union G = Y forces phi(F) union phi(G) = X; every subfamily with empty
    intersection keeps an empty intersection.  Assignments are explored in
    lexicographic target order and the first solution wins.
    """
    base = _check_base(Y, base)
    n = len(base)
    full_y = Y.full
    cover_pairs = [
        (i, j) for i in range(n) for j in range(i, n) if base[i] | base[j] == full_y
    ]
    min_empty = _min_empty_families(base)
    targets = X.closed_sorted()
    full_x = X.full
    assignment = [None] * n

    def ok(i, t):
        if base[i] == 0:
            return t == 0
        if t == 0:
            return False
        if base[i] == full_y and t != full_x:
            return False
        for a, b in cover_pairs:
            if a != i and b != i:
                continue
            other = a + b - i
            if other == i:
                if t != full_x:
                    return False
            elif assignment[other] is not None and t | assignment[other] != full_x:
                return False
        for fam in min_empty:
            if not (fam >> i & 1):
                continue
            inter = t
            complete = True
            m = fam
            k = 0
            while m:
                if m & 1 and k != i:
                    if assignment[k] is None:
                        complete = False
                        break
                    inter &= assignment[k]
                m >>= 1
                k += 1
            if complete and inter != 0:
                return False
        return True

    def extend(i):
        if i == n:
            return True
        for t in targets:
            if ok(i, t):
                assignment[i] = t
                if extend(i + 1):
                    return True
                assignment[i] = None
        return False

    if extend(0):
        return LMorphism(tuple(base), dict(zip(base, assignment)))
    return None


def surjection_from_morphism(Y, phi, X):
    """Build and verify the point map X -> Y induced by an LMorphism.

    f(x) = the unique point of the intersection of the base sets whose
    phi-image contains x.  The report re-checks fibers, continuity,
    surjectivity, and the preimage identity
    f^{-1}[F] = intersection of {phi(G) : F inside Int G} for closed F.
    """
    base = list(phi.base)
    f = []
    for x in range(X.point_count):
        inter = Y.full
        for b in base:
            if phi.assignment[b] >> x & 1:
                inter &= b
        if bin(inter).count("1") != 1:
            raise NonSingletonIntersection(x)
        f.append(inter.bit_length() - 1)
    continuous = is_continuous(f, X, Y)
    onto = is_surjective(f, X, Y)
    identity_ok = True
    for c in Y.closed:
        pre = 0
        for x in range(X.point_count):
            if c >> f[x] & 1:
                pre |= 1 << x
        rhs = X.full
        for b in base:
            if c & ~Y.interior(b) == 0:
                rhs &= phi.assignment[b]
        if pre != rhs:
            identity_ok = False
    report = {
        "continuous": continuous,
        "surjective": onto,
        "preimage_identity": identity_ok,
    }
    return f, report


def preimage_morphism(f, X, Y, base=None):
    """The LMorphism induced by a continuous surjection: F -> f^{-1}[F]."""
    if base is None:
        base = Y.closed_sorted()
    base = _check_base(Y, base)
    assignment = {}
    for b in base:
        pre = 0
        for x in range(X.point_count):
            if b >> f[x] & 1:
                pre |= 1 << x
        assignment[b] = pre
    return LMorphism(tuple(base), assignment)


def oracle_surjection_equivalence(X, Y, base=None):
    """Exhaustive map search versus morphism search; they must agree for
    discrete spaces."""
    if base is None:
        base = Y.closed_sorted()
    oracle = False
    maps = [[]]
    for _ in range(X.point_count):
        maps = [m + [y] for m in maps for y in range(Y.point_count)]
    for f in maps:
        if is_surjective(f, X, Y) and is_continuous(f, X, Y):
            oracle = True
            break
    morphism = find_L_morphism(Y, base, X) is not None
    return {"oracle": oracle, "morphism": morphism, "agree": oracle == morphism}
