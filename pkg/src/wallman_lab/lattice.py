"""Finite bounded lattices: validated tables and the lattice-level predicates.

All semantics run on dense element indices; display names are metadata.
Every search returns the lexicographically least witness in index order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LatticeLawViolation, MalformedTables, NotDistributive, NotPliand


@dataclass(frozen=True)
class FiniteLattice:
    names: tuple
    meet: tuple  # n x n tuple-of-tuples of element indices
    join: tuple
    bottom: int
    top: int

    @property
    def n(self):
        return len(self.names)

    def leq(self, a, b):
        return self.meet[a][b] == a

    def elements(self):
        return range(self.n)

    def name(self, a):
        return self.names[a]

    def index_of(self, name):
        return self.names.index(name)

    def __repr__(self):
        return f"FiniteLattice(n={self.n}, names={self.names!r})"


@dataclass(frozen=True)
class Poset:
    size: int
    le: tuple  # size x size tuple-of-tuples of bools

    def validate(self):
        n = self.size
        for a in range(n):
            if not self.le[a][a]:
                raise MalformedTables(f"le not reflexive at {a}")
        for a in range(n):
            for b in range(n):
                if a != b and self.le[a][b] and self.le[b][a]:
                    raise MalformedTables(f"le not antisymmetric at ({a},{b})")
                if self.le[a][b]:
                    for c in range(n):
                        if self.le[b][c] and not self.le[a][c]:
                            raise MalformedTables(f"le not transitive at ({a},{b},{c})")
        return self


@dataclass(frozen=True)
class PliandFoursome:
    c: int
    d: int
    f: int
    g: int


@dataclass(frozen=True)
class Chicane:
    z1: int
    z2: int
    z3: int


def table_violations(names, meet, join, bottom, top):
    """Return the complete list of (law, witness) pairs violated by the tables."""
    n = len(names)
    if len(meet) != n or len(join) != n or any(len(r) != n for r in meet) or any(len(r) != n for r in join):
        raise MalformedTables("tables must be square and match the element count")
    for t, label in ((meet, "meet"), (join, "join")):
        for row in t:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise MalformedTables(f"{label} entry {v!r} out of range")
    if not 0 <= bottom < n or not 0 <= top < n:
        raise MalformedTables("bottom/top out of range")
    if n < 2 or bottom == top:
        raise MalformedTables("a bounded lattice needs distinct bottom and top")

    out = []
    for t, label in ((meet, "meet"), (join, "join")):
        for a in range(n):
            if t[a][a] != a:
                out.append((f"{label}-idempotence", (a,)))
            for b in range(n):
                if t[a][b] != t[b][a]:
                    out.append((f"{label}-commutativity", (a, b)))
                for c in range(n):
                    if t[t[a][b]][c] != t[a][t[b][c]]:
                        out.append((f"{label}-associativity", (a, b, c)))
    for a in range(n):
        for b in range(n):
            if meet[a][join[a][b]] != a:
                out.append(("absorption-meet-join", (a, b)))
            if join[a][meet[a][b]] != a:
                out.append(("absorption-join-meet", (a, b)))
    for a in range(n):
        if meet[bottom][a] != bottom:
            out.append(("bottom-meet", (a,)))
        if join[top][a] != top:
            out.append(("top-join", (a,)))
        if join[bottom][a] != a:
            out.append(("bottom-join", (a,)))
        if meet[top][a] != a:
            out.append(("top-meet", (a,)))
    for a in range(n):
        for b in range(n):
            if (meet[a][b] == a) != (join[a][b] == b):
                out.append(("order-agreement", (a, b)))
    return out


def validate(names, meet, join, bottom, top):
    """Build a FiniteLattice from raw tables, or raise with all violated laws."""
    names = tuple(names)
    meet = tuple(tuple(r) for r in meet)
    join = tuple(tuple(r) for r in join)
    bad = table_violations(names, meet, join, bottom, top)
    if bad:
        raise LatticeLawViolation(bad)
    return FiniteLattice(names, meet, join, bottom, top)


def chain(k):
    """The k-element chain 0 < 1 < ... < k-1."""
    names = tuple(f"c{i}" for i in range(k))
    meet = tuple(tuple(min(a, b) for b in range(k)) for a in range(k))
    join = tuple(tuple(max(a, b) for b in range(k)) for a in range(k))
    return validate(names, meet, join, 0, k - 1)


def powerset_lattice(k):
    """2^{0..k-1}; element index == subset bitmask."""
    n = 1 << k
    names = tuple("{" + ",".join(str(i) for i in range(k) if m >> i & 1) + "}" for m in range(n))
    meet = tuple(tuple(a & b for b in range(n)) for a in range(n))
    join = tuple(tuple(a | b for b in range(n)) for a in range(n))
    return validate(names, meet, join, 0, n - 1)


def diamond_m3():
    """M3: bottom, three incomparable midpoints, top."""
    names = ("0", "a", "b", "c", "1")
    n = 5

    def mt(a, b):
        if a == b:
            return a
        if a == 0 or b == 0:
            return 0
        if a == 4:
            return b
        if b == 4:
            return a
        return 0

    def jn(a, b):
        if a == b:
            return a
        if a == 4 or b == 4:
            return 4
        if a == 0:
            return b
        if b == 0:
            return a
        return 4

    meet = tuple(tuple(mt(a, b) for b in range(n)) for a in range(n))
    join = tuple(tuple(jn(a, b) for b in range(n)) for a in range(n))
    return validate(names, meet, join, 0, 4)


def is_distributive(L):
    """True iff meet distributes over join; else the least violating triple."""
    meet, join = L.meet, L.join
    for a in L.elements():
        for b in L.elements():
            for c in L.elements():
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    return False, (a, b, c)
    return True, None


def is_disjunctive(L):
    """Separativity: a not<= b implies some nonzero c <= a with c^b = 0."""
    meet = L.meet
    bot = L.bottom
    for a in L.elements():
        for b in L.elements():
            if L.leq(a, b):
                continue
            ok = any(
                c != bot and meet[c][a] == c and meet[c][b] == bot
                for c in L.elements()
            )
            if not ok:
                return False, (a, b)
    return True, None


def is_normal(L):
    """Evaluate the separation property behind Hausdorffness of the represented space.

    Returns (True, witness_map) where witness_map[(x,y)] = (u,v) for each
    disjoint pair, or (False, (x,y)) for the least pair with no witness.
    """
    meet, join = L.meet, L.join
    bot, top = L.bottom, L.top
    witnesses = {}
    for x in L.elements():
        for y in L.elements():
            if meet[x][y] != bot:
                continue
            found = None
            for u in L.elements():
                if meet[x][u] != bot:
                    continue
                for v in L.elements():
                    if meet[y][v] == bot and join[u][v] == top:
                        found = (u, v)
                        break
                if found:
                    break
            if found is None:
                return False, (x, y)
            witnesses[(x, y)] = found
    return True, witnesses


def conn(L, a):
    """No splitting of a into two disjoint nonzero pieces joining to a."""
    meet, join = L.meet, L.join
    bot = L.bottom
    for x in L.elements():
        for y in L.elements():
            if meet[x][y] == bot and join[x][y] == a and not (x == bot or x == a):
                return False, (x, y)
    return True, None


def is_pliand(L, fs):
    meet, bot = L.meet, L.bottom
    return meet[fs.c][fs.d] == bot and meet[fs.c][fs.f] == bot and meet[fs.d][fs.g] == bot


def chicane_identities_hold(L, fs, ch):
    meet, join = L.meet, L.join
    bot = L.bottom
    return (
        meet[fs.c][join[ch.z2][ch.z3]] == bot
        and meet[fs.d][join[ch.z1][ch.z2]] == bot
        and meet[ch.z1][ch.z3] == bot
        and meet[meet[ch.z1][ch.z2]][fs.g] == bot
        and meet[meet[ch.z2][ch.z3]][fs.f] == bot
        and join[join[ch.z1][ch.z2]][ch.z3] == L.top
    )


def find_chicane(L, fs):
    """Lexicographically least chicane for a pliand foursome, or None."""
    if not is_pliand(L, fs):
        raise NotPliand(f"foursome {fs} violates the pliand identities")
    meet, join = L.meet, L.join
    bot, top = L.bottom, L.top
    c, d, f, g = fs.c, fs.d, fs.f, fs.g
    for z1 in L.elements():
        if meet[z1][d] != bot:
            continue
        for z2 in L.elements():
            if meet[c][z2] != bot or meet[d][z2] != bot:
                continue
            if meet[meet[z1][z2]][g] != bot:
                continue
            for z3 in L.elements():
                if (
                    meet[c][z3] == bot
                    and meet[z1][z3] == bot
                    and meet[meet[z2][z3]][f] == bot
                    and join[join[z1][z2]][z3] == top
                ):
                    # the prunes above are only necessary conditions in a
                    # non-distributive lattice; confirm the six identities
                    ch = Chicane(z1, z2, z3)
                    if chicane_identities_hold(L, fs, ch):
                        return ch
    return None


def satisfies_HI(L):
    """Every pliand foursome admits a chicane; else the least offending foursome."""
    for c in L.elements():
        for d in L.elements():
            if L.meet[c][d] != L.bottom:
                continue
            for f in L.elements():
                if L.meet[c][f] != L.bottom:
                    continue
                for g in L.elements():
                    if L.meet[d][g] != L.bottom:
                        continue
                    fs = PliandFoursome(c, d, f, g)
                    if find_chicane(L, fs) is None:
                        return False, fs
    return True, None


def satisfies_dim_le1(L):
    """Two disjoint pairs always admit partition witnesses with vanishing 4-fold meet.

    Returns (True, witness_map) or (False, (x0,y0,x1,y1)).
    """
    meet, join = L.meet, L.join
    bot, top = L.bottom, L.top
    disjoint = [(x, y) for x in L.elements() for y in L.elements() if meet[x][y] == bot]
    witnesses = {}
    for x0, y0 in disjoint:
        for x1, y1 in disjoint:
            found = None
            for u0 in L.elements():
                if meet[x0][u0] != bot:
                    continue
                for v0 in L.elements():
                    if meet[y0][v0] != bot or join[u0][v0] != top:
                        continue
                    for u1 in L.elements():
                        if meet[x1][u1] != bot:
                            continue
                        for v1 in L.elements():
                            if (
                                meet[y1][v1] == bot
                                and join[u1][v1] == top
                                and meet[meet[meet[u0][v0]][u1]][v1] == bot
                            ):
                                found = (u0, v0, u1, v1)
                                break
                        if found:
                            break
                    if found:
                        break
                if found:
                    break
            if found is None:
                return False, (x0, y0, x1, y1)
            witnesses[(x0, y0, x1, y1)] = found
    return True, witnesses


def downset_lattice(P):
    """Lattice of down-closed subsets of a poset under intersection/union."""
    P.validate()
    n = P.size
    down = []
    for mask in range(1 << n):
        ok = True
        for a in range(n):
            if mask >> a & 1:
                for b in range(n):
                    if P.le[b][a] and not mask >> b & 1:
                        ok = False
                        break
            if not ok:
                break
        if ok:
            down.append(mask)
    down.sort(key=lambda m: (bin(m).count("1"), m))
    idx = {m: i for i, m in enumerate(down)}
    k = len(down)
    names = tuple("{" + ",".join(f"p{a}" for a in range(n) if m >> a & 1) + "}" for m in down)
    meet = tuple(tuple(idx[down[i] & down[j]] for j in range(k)) for i in range(k))
    join = tuple(tuple(idx[down[i] | down[j]] for j in range(k)) for i in range(k))
    return validate(names, meet, join, 0, k - 1)


def join_irreducibles(L):
    out = []
    for e in L.elements():
        if e == L.bottom:
            continue
        strictly_below = [a for a in L.elements() if a != e and L.leq(a, e)]
        # e is join-irreducible iff the join of everything strictly below stays below e
        acc = L.bottom
        for a in strictly_below:
            acc = L.join[acc][a]
        if acc != e:
            out.append(e)
    return out


def birkhoff_poset(L):
    """Poset of join-irreducibles of a distributive lattice."""
    ok, witness = is_distributive(L)
    if not ok:
        raise NotDistributive(f"witness triple {witness}")
    irr = join_irreducibles(L)
    m = len(irr)
    le = tuple(tuple(L.leq(irr[a], irr[b]) for b in range(m)) for a in range(m))
    return Poset(m, le).validate()


def lattice_isomorphism(A, B):
    """An isomorphism (index map) between bounded lattices, or None."""
    if A.n != B.n:
        return None

    def profile(L, e):
        down = sum(1 for a in L.elements() if L.leq(a, e))
        up = sum(1 for a in L.elements() if L.leq(e, a))
        return (down, up)

    pa = {e: profile(A, e) for e in A.elements()}
    pb = {e: profile(B, e) for e in B.elements()}
    order = sorted(A.elements(), key=lambda e: (pa[e], e))
    mapping = {A.bottom: B.bottom, A.top: B.top}
    if pa[A.bottom] != pb[B.bottom] or pa[A.top] != pb[B.top]:
        return None
    used = set(mapping.values())
    order = [e for e in order if e not in (A.bottom, A.top)]

    def consistent(e, img):
        for a, fa in mapping.items():
            if A.meet[e][a] in mapping and mapping[A.meet[e][a]] != B.meet[img][fa]:
                return False
            if A.join[e][a] in mapping and mapping[A.join[e][a]] != B.join[img][fa]:
                return False
        return True

    def full_check():
        for a in A.elements():
            for b in A.elements():
                if mapping[A.meet[a][b]] != B.meet[mapping[a]][mapping[b]]:
                    return False
                if mapping[A.join[a][b]] != B.join[mapping[a]][mapping[b]]:
                    return False
        return True

    def extend(i):
        if i == len(order):
            return full_check()
        e = order[i]
        for img in B.elements():
            if img in used or pb[img] != pa[e]:
                continue
            mapping[e] = img
            used.add(img)
            if consistent(e, img) and extend(i + 1):
                return True
            del mapping[e]
            used.discard(img)
        return False

    if extend(0):
        return dict(mapping)
    return None


def enumerate_distributive(max_size):
    """One representative per isomorphism class of distributive lattices, size <= max_size.

    Generated through downset lattices of posets of join-irreducibles; poset
    isomorphism classes give exactly one lattice per class.
    """
    from .enumeration import posets_up_to_iso

    found = []
    for m in range(1, max_size):
        for P in posets_up_to_iso(m):
            L = downset_lattice(P)
            if L.n <= max_size:
                found.append(L)
    found.sort(key=lambda L: L.n)
    yield from found
