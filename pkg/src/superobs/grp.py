"""Finite groups, homomorphisms, coefficient modules and group extensions.

Group elements are indices ``0 .. order-1`` into a Cayley table, with 0 the
identity.  Abelian groups built from a list of cyclic factors additionally know
the residue tuple of every element, which is what the linear algebra in
:mod:`superobs.cochain` works with.
"""

from itertools import product

from .qzlin import SmithSolver, smith_normal_form, lcm

__all__ = [
    "GroupError",
    "FinGroup",
    "group_from_invariants",
    "cyclic_group",
    "direct_product",
    "GroupHom",
    "GModule",
    "ModuleHom",
    "ShortExactSeq",
    "supergroup_extension",
    "verify_module",
    "subgroup_module",
]


class GroupError(ValueError):
    """Raised for malformed groups, modules or maps."""


class FinGroup:
    """A finite group given by its multiplication table.

    ``factors`` (optional) marks the group as abelian with elements the residue
    tuples of ``Z/factors[0] x Z/factors[1] x ...``; ``elements[i]`` is then the
    tuple of element ``i``.
    """

    def __init__(self, table, factors=None, elements=None, name=None, check=True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        if self.order == 0:
            raise GroupError("a group needs at least one element")
        self.factors = tuple(factors) if factors is not None else None
        self.elements = tuple(tuple(e) for e in elements) if elements is not None else None
        self.name = name
        if check:
            bad = self.violations(limit=1)
            if bad:
                raise GroupError(f"not a group: {bad[0]}")
        self._inv = [0] * self.order
        for i in range(self.order):
            for j in range(self.order):
                if self.table[i][j] == 0:
                    self._inv[i] = j
                    break
        if self.elements is not None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        self._hash = hash(self.table)

    # -- basic structure --------------------------------------------------
    def mul(self, x, y):
        return self.table[x][y]

    def inv(self, x):
        return self._inv[x]

    def prod(self, xs):
        out = 0
        for x in xs:
            out = self.table[out][x]
        return out

    def power(self, x, k):
        if k < 0:
            x, k = self._inv[x], -k
        out = 0
        for _ in range(k):
            out = self.table[out][x]
        return out

    def element_order(self, x):
        k, y = 1, x
        while y != 0:
            y = self.table[y][x]
            k += 1
        return k

    @property
    def exponent(self):
        return lcm(*(self.element_order(x) for x in range(self.order)))

    @property
    def is_abelian(self):
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(self.order) for j in range(i))

    def center(self):
        t = self.table
        return [i for i in range(self.order)
                if all(t[i][j] == t[j][i] for j in range(self.order))]

    def index(self, residues):
        """Index of the element with the given residue tuple (abelian groups)."""
        if self.elements is None:
            raise GroupError("group has no abelian presentation")
        key = tuple(int(r) % d for r, d in zip(residues, self.factors))
        return self._index[key]

    def residues(self, x):
        if self.elements is None:
            raise GroupError("group has no abelian presentation")
        return self.elements[x]

    @property
    def rank(self):
        return len(self.factors) if self.factors is not None else None

    def generator(self, i):
        """The i-th standard generator of an abelian presentation."""
        e = [0] * len(self.factors)
        e[i] = 1
        return self.index(e)

    def violations(self, limit=None):
        """Group axioms that fail, as human-readable strings."""
        out = []
        n, t = self.order, self.table

        def add(msg):
            out.append(msg)
            return limit is not None and len(out) >= limit

        for row in t:
            if len(row) != n:
                add("table is not square")
                return out
            if any(not 0 <= x < n for x in row):
                add("table entry out of range")
                return out
        for i in range(n):
            if t[0][i] != i or t[i][0] != i:
                if add(f"0 is not a two-sided identity at {i}"):
                    return out
        for i in range(n):
            if len(set(t[i])) != n or len({t[j][i] for j in range(n)}) != n:
                if add(f"row/column {i} is not a permutation (no inverses)"):
                    return out
        for i in range(n):
            ti = t[i]
            for j in range(n):
                tij = ti[j]
                tj = t[j]
                for k in range(n):
                    if t[tij][k] != ti[tj[k]]:
                        if add(f"associativity fails at {(i, j, k)}"):
                            return out
        if self.elements is not None:
            fs = self.factors
            for i, j in product(range(n), repeat=2):
                s = tuple((a + b) % d for a, b, d in zip(self.elements[i], self.elements[j], fs))
                if self.elements[t[i][j]] != s:
                    if add(f"table disagrees with residue addition at {(i, j)}"):
                        return out
        return out

    def __eq__(self, other):
        return isinstance(other, FinGroup) and self.table == other.table

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.factors is not None:
            return f"FinGroup(invariants={list(self.factors)})"
        return f"FinGroup(order={self.order})"

    def to_json(self):
        if self.factors is not None:
            return {"invariants": list(self.factors)}
        return {"table": [list(r) for r in self.table]}


def group_from_invariants(factors, name=None):
    """Abelian group Z/d1 x Z/d2 x ...; elements enumerated in lexicographic
    order of residue tuples (last coordinate fastest), so 0 is the identity."""
    factors = [int(d) for d in factors]
    for d in factors:
        if d < 2:
            raise GroupError(f"cyclic factor {d} must be at least 2")
    elements = list(product(*(range(d) for d in factors)))
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[tuple((a + b) % d for a, b, d in zip(x, y, factors))] for y in elements]
             for x in elements]
    return FinGroup(table, factors=factors, elements=elements, name=name, check=False)


def cyclic_group(m):
    return group_from_invariants([m], name=f"Z/{m}")


def direct_product(G, H):
    """G x H with element (g, h) at index g * |H| + h."""
    nH = H.order
    table = [[G.mul(g1, g2) * nH + H.mul(h1, h2)
              for g2 in range(G.order) for h2 in range(nH)]
             for g1 in range(G.order) for h1 in range(nH)]
    if G.factors is not None and H.factors is not None:
        elements = [G.elements[g] + H.elements[h] for g in range(G.order) for h in range(nH)]
        return FinGroup(table, factors=G.factors + H.factors, elements=elements, check=False)
    return FinGroup(table, check=False)


class GroupHom:
    """A map between finite groups given by its image table."""

    def __init__(self, source, target, images, check=True):
        self.source = source
        self.target = target
        self.images = tuple(int(x) for x in images)
        if len(self.images) != source.order:
            raise GroupError("image table has the wrong length")
        if check:
            bad = self.violations(limit=1)
            if bad:
                raise GroupError(f"not a homomorphism: {bad[0]}")

    def __call__(self, x):
        return self.images[x]

    def violations(self, limit=None):
        out = []
        S, T = self.source, self.target
        for x in range(S.order):
            for y in range(S.order):
                if self.images[S.mul(x, y)] != T.mul(self.images[x], self.images[y]):
                    out.append(f"h(xy) != h(x)h(y) at {(x, y)}")
                    if limit is not None and len(out) >= limit:
                        return out
        return out

    @classmethod
    def from_generator_images(cls, source, target, gen_images):
        """Homomorphism from an abelian presentation, given images of the
        standard generators."""
        imgs = []
        for x in range(source.order):
            acc = 0
            for gi, k in zip(gen_images, source.elements[x]):
                acc = target.mul(acc, target.power(gi, k))
            imgs.append(acc)
        return cls(source, target, imgs)

    def kernel(self):
        return [x for x in range(self.source.order) if self.images[x] == 0]


# -- modules -----------------------------------------------------------------

def _residue_matrix_images(M, perm):
    """Integer matrix (columns = residues of images of the standard generators)."""
    r = len(M.factors)
    cols = [M.elements[perm[M.generator(j)]] for j in range(r)]
    return [[cols[j][i] for j in range(r)] for i in range(r)]


class GModule:
    """A finite abelian group M (with abelian presentation) acted on by G.

    ``perms[g][m]`` is the index of ``g . m``.  Elements are M-indices.
    """

    def __init__(self, G, M, perms=None, check=True, name=None):
        if M.factors is None:
            raise GroupError("coefficient modules need an abelian presentation")
        self.G = G
        self.M = M
        self.name = name
        if perms is None:
            ident = tuple(range(M.order))
            perms = [ident] * G.order
        self.perms = tuple(tuple(int(x) for x in p) for p in perms)
        if len(self.perms) != G.order:
            raise GroupError("action table must have one entry per group element")
        if check:
            bad = verify_module(self)["violations"]
            if bad:
                raise GroupError(f"invalid module: {bad[0]}")
        self.moduli = M.factors
        self._matrices = None
        self.trivial = all(p == tuple(range(M.order)) for p in self.perms)

    @classmethod
    def trivial_module(cls, G, M):
        return cls(G, M, None, check=False)

    @classmethod
    def from_generator_images(cls, G, M, images, check=True):
        """``images[g]`` lists the residue tuples of g acting on each standard
        generator of M; the action is extended additively."""
        perms = []
        r = len(M.factors)
        for g in range(G.order):
            imgs = images[g]
            if len(imgs) != r:
                raise GroupError("need one image per generator of M")
            cols = [tuple(int(v) for v in im) for im in imgs]
            perm = []
            for x in M.elements:
                vec = [sum(cols[j][i] * x[j] for j in range(r)) for i in range(r)]
                perm.append(M.index(vec))
            perms.append(perm)
        return cls(G, M, perms, check=check)

    @property
    def order(self):
        return self.M.order

    def act(self, g, x):
        return self.perms[g][x]

    def add(self, x, y):
        return self.M.table[x][y]

    def neg(self, x):
        return self.M.inv(x)

    def sub(self, x, y):
        return self.M.table[x][self.M.inv(y)]

    def scale(self, k, x):
        return self.M.power(x, k)

    def residues(self, x):
        return self.M.elements[x]

    def index(self, residues):
        return self.M.index(residues)

    def matrices(self):
        """Integer matrices of the action on residue vectors, one per g."""
        if self._matrices is None:
            self._matrices = [_residue_matrix_images(self.M, p) for p in self.perms]
        return self._matrices

    def fixed_points(self):
        return [x for x in range(self.order) if all(p[x] == x for p in self.perms)]

    def __repr__(self):
        tag = "trivial" if self.trivial else "nontrivial"
        return f"GModule(G order {self.G.order}, M={list(self.M.factors)}, {tag} action)"

    def __eq__(self, other):
        return (isinstance(other, GModule) and self.G == other.G and self.M == other.M
                and self.perms == other.perms)

    def __hash__(self):
        return hash((self.G, self.M, self.perms))

    def to_json(self):
        out = {"invariants": list(self.M.factors)}
        if not self.trivial:
            r = len(self.M.factors)
            out["action"] = [[list(self.M.elements[p[self.M.generator(j)]]) for j in range(r)]
                             for p in self.perms]
        return out


def verify_module(m):
    """Check the G-module axioms; returns ``{"valid": bool, "violations": [...]}``."""
    G, M = m.G, m.M
    viol = []
    n = M.order
    ident = tuple(range(n))
    if m.perms[0] != ident:
        viol.append("act(e) is not the identity")
    for g, p in enumerate(m.perms):
        if len(p) != n or any(not 0 <= x < n for x in p):
            viol.append(f"act({g}) has malformed image table")
            continue
        if len(set(p)) != n:
            viol.append(f"act({g}) is not bijective")
        for x in range(n):
            bad = False
            for y in range(n):
                if p[M.mul(x, y)] != M.mul(p[x], p[y]):
                    viol.append(f"act({g}) is not additive at {(x, y)}")
                    bad = True
                    break
            if bad:
                break
    if not viol:
        for g in range(G.order):
            for h in range(G.order):
                pg, ph, pgh = m.perms[g], m.perms[h], m.perms[G.mul(g, h)]
                if any(pg[ph[x]] != pgh[x] for x in range(n)):
                    viol.append(f"act({g}) o act({h}) != act({g}*{h})")
    return {"valid": not viol, "violations": viol}


class ModuleHom:
    """A G-equivariant homomorphism between G-modules, as an image table."""

    def __init__(self, src, dst, images, check=True):
        self.src = src
        self.dst = dst
        self.images = tuple(int(x) for x in images)
        if len(self.images) != src.order:
            raise GroupError("image table has the wrong length")
        if src.G != dst.G:
            raise GroupError("modules over different groups")
        if check:
            bad = self.violations(limit=1)
            if bad:
                raise GroupError(f"not an equivariant homomorphism: {bad[0]}")
        self._matrix = None

    @classmethod
    def from_generator_images(cls, src, dst, gen_images, check=True):
        """Images (dst residue tuples) of the standard generators of src."""
        M = src.M
        r = len(M.factors)
        gi = [dst.index(v) for v in gen_images]
        imgs = []
        for x in M.elements:
            acc = 0
            for j in range(r):
                acc = dst.add(acc, dst.scale(x[j], gi[j]))
            imgs.append(acc)
        return cls(src, dst, imgs, check=check)

    def __call__(self, x):
        return self.images[x]

    def violations(self, limit=None):
        out = []
        S, D = self.src, self.dst
        for x in range(S.order):
            for y in range(S.order):
                if self.images[S.add(x, y)] != D.add(self.images[x], self.images[y]):
                    out.append(f"not additive at {(x, y)}")
                    break
            if limit is not None and len(out) >= limit:
                return out
        for g in range(S.G.order):
            for x in range(S.order):
                if self.images[S.act(g, x)] != D.act(g, self.images[x]):
                    out.append(f"not equivariant at g={g}, x={x}")
                    if limit is not None and len(out) >= limit:
                        return out
                    break
        return out

    def matrix(self):
        """Integer matrix on residue vectors (columns = images of generators)."""
        if self._matrix is None:
            S, D = self.src.M, self.dst.M
            cols = [D.elements[self.images[S.generator(j)]] for j in range(len(S.factors))]
            self._matrix = [[c[i] for c in cols] for i in range(len(D.factors))]
        return self._matrix

    def kernel(self):
        return [x for x in range(self.src.order) if self.images[x] == 0]

    def image(self):
        return sorted(set(self.images))

    def is_zero(self):
        return all(x == 0 for x in self.images)

    def is_surjective(self):
        return len(set(self.images)) == self.dst.order

    def is_injective(self):
        return len(set(self.images)) == self.src.order


class ShortExactSeq:
    """0 -> A --i--> B --r--> C -> 0 of G-modules with a normalized section s."""

    def __init__(self, i, r, section=None, check=True):
        self.i = i
        self.r = r
        self.A, self.B, self.C = i.src, i.dst, r.dst
        if r.src != self.B:
            raise GroupError("i and r do not compose")
        if section is None:
            section = [None] * self.C.order
            for b in range(self.B.order):
                c = r(b)
                if section[c] is None:
                    section[c] = b
            if any(s is None for s in section):
                raise GroupError("r is not surjective")
        self.s = tuple(section)
        self._i_inv = {i(a): a for a in range(self.A.order)}
        if check:
            bad = self.violations()
            if bad:
                raise GroupError(f"not a short exact sequence: {bad[0]}")

    def violations(self):
        out = []
        if not self.i.is_injective():
            out.append("i is not injective")
        if not self.r.is_surjective():
            out.append("r is not surjective")
        if set(self.i.images) != set(self.r.kernel()):
            out.append("im(i) != ker(r)")
        if self.s[0] != 0:
            out.append("section is not normalized (s(0) != 0)")
        if any(self.r(self.s[c]) != c for c in range(self.C.order)):
            out.append("r o s != id")
        return out

    def i_inverse(self, b):
        try:
            return self._i_inv[b]
        except KeyError:
            raise GroupError(f"element {b} of B is not in the image of i") from None

    def with_section(self, section):
        return ShortExactSeq(self.i, self.r, section)

    def all_sections(self):
        """Every normalized set-theoretic section (for small C)."""
        fibers = [[b for b in range(self.B.order) if self.r(b) == c] for c in range(self.C.order)]
        fibers[0] = [0]
        for choice in product(*fibers):
            yield tuple(choice)


# -- extensions ----------------------------------------------------------------

def supergroup_extension(G, C, action=None, phi=None):
    """The group of pairs (c, g) with (a,g)(b,h) = (a + g.b + phi(g,h), gh).

    ``C`` is an abelian FinGroup, ``action`` a GModule over G on C (None for the
    trivial action) and ``phi`` a normalized 2-cocycle, either a callable on
    pairs of G-indices returning C-indices or a cochain exposing ``__call__``.
    Element (c, g) has index ``g * |C| + c``.
    """
    if action is None:
        action = GModule.trivial_module(G, C)
    if phi is None:
        def phi(g, h):
            return 0
    nC = C.order
    vals = [[phi(g, h) if g and h else 0 for h in range(G.order)] for g in range(G.order)]
    for g in range(G.order):
        if vals[g][0] or vals[0][g]:
            raise GroupError("phi is not normalized")
    for g, h, k in product(range(G.order), repeat=3):
        lhs = C.mul(action.act(g, vals[h][k]), vals[g][G.mul(h, k)])
        rhs = C.mul(vals[g][h], vals[G.mul(g, h)][k])
        if lhs != rhs:
            raise GroupError(f"phi is not a 2-cocycle at {(g, h, k)}")
    table = []
    for g in range(G.order):
        for a in range(nC):
            row = []
            for h in range(G.order):
                gh = G.mul(g, h)
                for b in range(nC):
                    c = C.mul(C.mul(a, action.act(g, b)), vals[g][h])
                    row.append(gh * nC + c)
            table.append(row)
    return FinGroup(table)


# -- subgroups and quotients of finite abelian groups ----------------------

def _lattice_presentation(gen_cols, moduli):
    """For generators (integer columns) of a subgroup of (+) Z/moduli, return
    (factors, U, Uinv) with Z^k / L = (+) Z/factors where L is the relation
    lattice of the generators; coordinates of x in Z^k are (U x)_i."""
    r = len(moduli)
    k = len(gen_cols)
    # relation lattice L = {x : S x in diag(moduli) Z^r}
    S = [[gen_cols[j][i] for j in range(k)] for i in range(r)]
    aug = [S[i] + [(-moduli[i] if t == i else 0) for t in range(r)] for i in range(r)]
    ker = SmithSolver(aug, k + r).kernel()
    Lgens = [[v[j] for j in range(k)] for v in ker]
    L = [[Lgens[c][j] for c in range(len(Lgens))] for j in range(k)]
    U, D, V = smith_normal_form(L, len(Lgens))
    diag = [D[i][i] if i < len(Lgens) else 0 for i in range(k)]
    return diag, U


def _unimodular_inverse(U):
    from fractions import Fraction
    n = len(U)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(U)]
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [[int(x) for x in row[n:]] for row in A]


def subgroup_module(m, elements):
    """Present a G-stable subgroup of the module ``m`` as a GModule.

    Returns ``(K, inclusion)`` where ``inclusion`` is a ModuleHom K -> m.
    """
    elements = sorted(set(elements))
    M = m.M
    gens = [list(M.elements[x]) for x in elements if x != 0]
    if not gens:
        K = GModule.trivial_module(m.G, group_from_invariants([]))
        return K, ModuleHom(K, m, [0])
    diag, U = _lattice_presentation(gens, list(M.factors))
    Uinv = _unimodular_inverse(U)
    keep = [i for i, d in enumerate(diag) if d != 1]
    if any(diag[i] == 0 for i in keep):
        raise GroupError("subgroup presentation produced a free factor")
    factors = [diag[i] for i in keep]
    Kg = group_from_invariants(factors)
    # new generator i corresponds to Uinv column i, mapped through the generators
    k = len(gens)
    new_gen_elems = []
    for i in keep:
        col = [Uinv[j][i] for j in range(k)]
        vec = [sum(col[j] * gens[j][t] for j in range(k)) for t in range(len(M.factors))]
        new_gen_elems.append(M.index(vec))
    inc = []
    for x in Kg.elements:
        acc = 0
        for e, c in zip(new_gen_elems, x):
            acc = M.mul(acc, M.power(e, c))
        inc.append(acc)
    if sorted(inc) != elements:
        raise GroupError("elements do not form a subgroup")
    back = {b: a for a, b in enumerate(inc)}
    perms = []
    for g in range(m.G.order):
        try:
            perms.append([back[m.act(g, inc[a])] for a in range(Kg.order)])
        except KeyError:
            raise GroupError("subgroup is not G-stable") from None
    K = GModule(m.G, Kg, perms)
    return K, ModuleHom(K, m, inc)
