"""Independent oracles and reusable property checks for the test suite.

The oracles here avoid the package's own linear algebra: coboundary
matrices are rebuilt from the defining formula and solved with sympy's
Smith decomposition, and tiny systems are brute-forced.
"""

import random
from fractions import Fraction
from functools import lru_cache
from itertools import product

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from superobs.cochain import (
    QZ_COEFF,
    Cochain,
    ModuleCoeff,
    coboundary,
    connecting_map,
    is_cocycle,
    triviality_finite,
    triviality_qz,
)
from superobs.grp import (
    FinGroup,
    GModule,
    ModuleHom,
    ShortExactSeq,
    cyclic_group,
    group_from_invariants,
    supergroup_extension,
)
from superobs.obstruct import TwistCocycle, o4_general, o4_twisted_identity
from superobs.qzlin import QZ, lcm


# -- small groups ------------------------------------------------------------------

def s3_group():
    """S3 as permutations of {0,1,2}, identity first."""
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0)]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return FinGroup(table, name="S3")


def d8_group():
    G = group_from_invariants([2, 2])
    return supergroup_extension(G, cyclic_group(2),
                                phi=lambda g, h: G.elements[g][1] * G.elements[h][0] % 2)


def small_groups(max_order=8):
    out = [group_from_invariants(f) for f in
           ([2], [3], [4], [5], [6], [7], [8], [2, 2], [2, 4], [2, 2, 2])]
    out += [s3_group(), d8_group()]
    return [G for G in out if G.order <= max_order]


# -- cochain generators -------------------------------------------------------------

def random_qz_cochain(G, n, rnd, dens=(1, 2, 3, 4, 6, 8)):
    vals = [QZ(rnd.randrange(d), d) for d in (rnd.choice(dens) for _ in range((G.order - 1) ** n))]
    return Cochain(G, QZ_COEFF, n, vals)


def random_module_cochain(module, n, rnd):
    return Cochain(module.G, ModuleCoeff(module), n,
                   [rnd.randrange(module.order) for _ in range((module.G.order - 1) ** n)])


def multilinear_cochain(G, n, coords, den):
    """(1/den) * prod_i g_i[coords[i]] on a product-presented abelian group."""
    E = G.elements

    def fn(*gs):
        p = 1
        for g, c in zip(gs, coords):
            p *= E[g][c]
        return QZ(p, den)
    return Cochain.from_function(G, QZ_COEFF, n, fn)


def carry_cochain(G, coord, den_scale=1):
    """(i/m) [j + k >= m] on coordinate ``coord`` of a product-presented group."""
    m = G.factors[coord]
    E = G.elements
    return Cochain.from_function(
        G, QZ_COEFF, 3, lambda x, y, z: QZ(E[x][coord] * int(E[y][coord] + E[z][coord] >= m),
                                           m * den_scale))


def candidate_qz_cocycles(G, n, rnd, count=6):
    """Random Q/Z n-cocycles mixing coboundaries with multiples of a few
    known cocycles, so that both verdicts occur."""
    gens = []
    r = len(G.factors)
    for coords in product(range(r), repeat=n):
        d = 1
        for c in coords:
            d = max(d, G.factors[c])
        for den in {G.factors[coords[0]], 2}:
            f = multilinear_cochain(G, n, coords, den)
            if is_cocycle(f):
                gens.append(f)
    if n == 3:
        gens += [carry_cochain(G, c) for c in range(r)]
    out = []
    for _ in range(count):
        f = Cochain.zero(G, QZ_COEFF, n)
        for g in gens:
            k = rnd.randrange(4)
            if k:
                f = f + g * k
        if n >= 2 and rnd.random() < 0.7:
            f = f + coboundary(random_qz_cochain(G, n - 1, rnd))
        out.append(f)
    return out


# -- independent Q/Z triviality oracle ------------------------------------------------

def tuples(G, n):
    return list(product(range(1, G.order), repeat=n))


@lru_cache(maxsize=None)
def coboundary_matrix(G, n):
    """Integer matrix of d: C^n -> C^{n+1} (normalized, trivial coefficients),
    written directly from the alternating-sum formula."""
    cols = {t: i for i, t in enumerate(tuples(G, n))}
    rows = []
    for gs in tuples(G, n + 1):
        row = [0] * len(cols)

        def add(t, s):
            if 0 not in t:
                row[cols[t]] += s
        add(gs[1:], 1)
        for i in range(n):
            add(gs[:i] + (G.mul(gs[i], gs[i + 1]),) + gs[i + 2:], (-1) ** (i + 1))
        add(gs[:n], (-1) ** (n + 1))
        rows.append(row)
    return rows


@lru_cache(maxsize=None)
def _decomp(G, n):
    A = Matrix(coboundary_matrix(G, n))
    S, U, V = smith_normal_decomp(A, domain=ZZ)
    diag = [S[i, i] for i in range(min(S.shape)) if S[i, i] != 0]
    return S, U, V, [int(d) for d in diag]


def qz_oracle(f):
    """(is_trivial, witness) for a Q/Z n-cocycle, via sympy's Smith
    decomposition U A V = S of the (n-1) -> n coboundary matrix.

    Over the divisible group Q/Z, A x = f is solvable iff the rows of U f
    beyond the rank vanish; the witness x = V y has y_i = (U f)_i / s_i."""
    G, n = f.G, f.degree
    vals = [v.as_fraction() for v in f.values]
    N = lcm(*(v.denominator for v in vals)) or 1
    F = Matrix([int(v * N) for v in vals])
    S, U, V, diag = _decomp(G, n - 1)
    c = U * F
    rank = len(diag)
    if any(int(c[i]) % N for i in range(rank, c.shape[0])):
        return False, None
    y = [Fraction(int(c[i]), N * diag[i]) for i in range(rank)] + [Fraction(0)] * (V.shape[0] - rank)
    x = [sum((Fraction(int(V[i, j])) * y[j] for j in range(len(y))), Fraction(0))
         for i in range(V.shape[0])]
    p = Cochain(G, QZ_COEFF, n - 1, [QZ(v.numerator, v.denominator) for v in x])
    return True, p


def applies(rows, p, f):
    """Check A p = f mod 1 using the independent matrix."""
    pv = [v.as_fraction() for v in p.values]
    fv = [v.as_fraction() for v in f.values]
    for row, target in zip(rows, fv):
        s = sum((a * x for a, x in zip(row, pv) if a), Fraction(0))
        if (s - target).denominator != 1:
            return False
    return True


def brute_force_qz_witness(f, den):
    """Exhaustive search for p with values in (1/den)Z/Z and dp = f."""
    G, n = f.G, f.degree
    rows = coboundary_matrix(G, n - 1)
    k = (G.order - 1) ** (n - 1)
    for vals in product(range(den), repeat=k):
        p = Cochain(G, QZ_COEFF, n - 1, [QZ(v, den) for v in vals])
        if applies(rows, p, f):
            return p
    return None


def brute_force_module_witness(f):
    """Exhaustive search for p over a finite module with dp = f."""
    m = f.coeff.module
    k = (f.G.order - 1) ** (f.degree - 1)
    for vals in product(range(m.order), repeat=k):
        p = Cochain(f.G, f.coeff, f.degree - 1, list(vals))
        if coboundary(p) == f:
            return p
    return None


# -- property checks (return a list of failure descriptions) --------------------------

def modules_for(G):
    """A few coefficient modules over G: trivial Z/2, Z/4, and a nontrivial
    action through a homomorphism to Z/2 when one is easy to find."""
    out = [GModule.trivial_module(G, cyclic_group(2)), GModule.trivial_module(G, cyclic_group(3))]
    if G.factors is not None and G.factors[0] % 2 == 0:
        M = cyclic_group(4)
        sign = [G.elements[g][0] % 2 for g in range(G.order)]
        out.append(GModule(G, M, [[M.inv(x) if sign[g] else x for x in range(4)]
                                  for g in range(G.order)]))
    return out


def check_dd_zero(G, n, rnd):
    failures = []
    f = random_qz_cochain(G, n, rnd)
    if not coboundary(coboundary(f)).is_zero():
        failures.append(("QZ", G.order, n))
    for m in modules_for(G):
        f = random_module_cochain(m, n, rnd)
        if not coboundary(coboundary(f)).is_zero():
            failures.append((repr(m.M.factors), G.order, n))
    return failures


def small_sequences():
    """(G, ShortExactSeq) pairs with |C| <= 4, trivial and nontrivial actions."""
    out = []
    for G in (cyclic_group(2), group_from_invariants([2, 2]), cyclic_group(4)):
        triv = lambda M: GModule.trivial_module(G, M)
        Z2, Z4, Z8 = cyclic_group(2), cyclic_group(4), cyclic_group(8)
        K22 = group_from_invariants([2, 2])
        K24 = group_from_invariants([2, 4])
        # 0 -> Z/2 -> Z/4 -> Z/2 -> 0
        out.append((G, ShortExactSeq(ModuleHom(triv(Z2), triv(Z4), [0, 2]),
                                     ModuleHom(triv(Z4), triv(Z2), [0, 1, 0, 1]))))
        # 0 -> Z/2 -> Z/2 x Z/2 -> Z/2 -> 0 (split)
        out.append((G, ShortExactSeq(ModuleHom(triv(Z2), triv(K22), [0, K22.index((1, 0))]),
                                     ModuleHom(triv(K22), triv(Z2),
                                               [e[1] for e in K22.elements]))))
        # 0 -> Z/2 -> Z/8 -> Z/4 -> 0
        out.append((G, ShortExactSeq(ModuleHom(triv(Z2), triv(Z8), [0, 4]),
                                     ModuleHom(triv(Z8), triv(Z4), [x % 4 for x in range(8)]))))
        # 0 -> Z/2 -> Z/2 x Z/4 -> Z/4 -> 0
        out.append((G, ShortExactSeq(ModuleHom(triv(Z2), triv(K24), [0, K24.index((1, 0))]),
                                     ModuleHom(triv(K24), triv(Z4),
                                               [e[1] for e in K24.elements]))))
        # nontrivial action: G acts on Z/2 x Z/2 by swapping through its first
        # coordinate mod 2; the sum map to Z/2 is equivariant
        sign = [G.elements[g][0] % 2 for g in range(G.order)]
        swap = [K22.index((e[1], e[0])) for e in K22.elements]
        B = GModule(G, K22, [swap if sign[g] else list(range(4)) for g in range(G.order)])
        diag = K22.index((1, 1))
        out.append((G, ShortExactSeq(ModuleHom(triv(Z2), B, [0, diag]),
                                     ModuleHom(B, triv(Z2), [sum(e) % 2 for e in K22.elements]))))
    return out


def all_cocycles(module, n):
    k = (module.G.order - 1) ** n
    out = []
    for vals in product(range(module.order), repeat=k):
        f = Cochain(module.G, ModuleCoeff(module), n, list(vals))
        if is_cocycle(f):
            out.append(f)
    return out


def check_section_independence(G, ses, n, limit=64):
    """Every normalized section gives cohomologous connecting-map outputs."""
    failures = []
    sections = list(ses.all_sections())
    k = (G.order - 1) ** n
    if ses.C.order ** k > 4096:
        return failures
    cocycles = all_cocycles(ses.C, n)[:limit]
    seqs = [ses.with_section(s) for s in sections]
    for f in cocycles:
        outs = [connecting_map(s, f) for s in seqs]
        for o in outs:
            if not is_cocycle(o):
                failures.append(("not a cocycle", f.values))
        for o in outs[1:]:
            if not triviality_finite(o - outs[0]).is_trivial:
                failures.append(("section dependence", f.values))
    return failures


def braided_targets():
    """Non-degenerate abelian 3-cocycles used as O4 targets."""
    from superobs.braidpt import AbelianCocycle, rank_four_family
    A2 = cyclic_group(2)
    drinfeld = AbelianCocycle(
        A2, lambda x, y, z: QZ(x * y * z, 2), lambda x, y: QZ(x * y, 4))
    A3 = cyclic_group(3)
    z3 = AbelianCocycle(A3, lambda x, y, z: QZ(0), lambda x, y: QZ(x * y, 3))
    return [drinfeld, z3, rank_four_family("KleinFour", QZ(1, 4)).cocycle,
            rank_four_family("Cyclic4", QZ(3, 8)).cocycle]


def random_twist(G, A, rnd):
    """A random normalized 2-cocycle G x G -> A (trivial action), built from
    carries and a coboundary."""
    t = [[0] * G.order for _ in range(G.order)]
    E = G.elements
    for c, m in enumerate(G.factors):
        a = rnd.randrange(A.order)
        for g in range(G.order):
            for h in range(G.order):
                if E[g][c] + E[h][c] >= m:
                    t[g][h] = A.mul(t[g][h], a)
    # bilinear pieces g_i h_j * a with a of order dividing gcd(n_i, n_j)
    for i, j in product(range(len(G.factors)), repeat=2):
        a = rnd.randrange(A.order)
        d = G.factors[i]
        e = G.factors[j]
        if A.power(a, d) != 0 or A.power(a, e) != 0:
            continue
        for g in range(G.order):
            for h in range(G.order):
                t[g][h] = A.mul(t[g][h], A.power(a, E[g][i] * E[h][j]))
    mu = TwistCocycle(G, A, t)
    nu = [0] + [rnd.randrange(A.order) for _ in range(G.order - 1)]
    return mu.shifted(nu)


def check_o4_properties(ac, G, rnd):
    failures = []
    mu = random_twist(G, ac.A, rnd)
    if mu.violations(limit=1):
        return [("bad twist", mu.table)]
    o4 = o4_twisted_identity(ac, G, mu, strategy="dense")
    if not is_cocycle(o4):
        failures.append(("O4 not a cocycle", mu.table))
    nu = [0] + [rnd.randrange(ac.A.order) for _ in range(G.order - 1)]
    o4s = o4_twisted_identity(ac, G, mu.shifted(nu), strategy="dense")
    if not triviality_qz(o4s - o4).is_trivial:
        failures.append(("shift changes the class", mu.table, nu))
    return failures


def check_general_matches_twisted(ac, G, rnd):
    from superobs.fermact import trivial_action
    mu = random_twist(G, ac.A, rnd)
    action = trivial_action(G, ac)
    a = o4_general(action, mu, strategy="dense")
    b = o4_twisted_identity(ac, G, mu, strategy="dense")
    bad = [t for t in product(range(G.order), repeat=4) if a(*t) != b(*t)]
    return [("pointwise mismatch", bad[:3])] if bad else []


def check_qz_oracle(f):
    """triviality_qz agrees with the independent oracle; witnesses re-check."""
    failures = []
    v = triviality_qz(f)
    ok, p = qz_oracle(f)
    if v.is_trivial != ok:
        failures.append(("verdict mismatch", v.status, ok))
    rows = coboundary_matrix(f.G, f.degree - 1)
    if ok and not applies(rows, p, f):
        failures.append(("oracle witness fails", f.values))
    if v.is_trivial and not applies(rows, v.witness, f):
        failures.append(("package witness fails", f.values))
    return failures


def seeded(seed):
    return random.Random(seed)
