"""Fermions in pointed data and bosonic / fermionic group actions.

Everything is additive in Q/Z.  A bosonic action of G on pointed data
(A, omega) is a triple (star, mu, gamma):

    star: G -> Aut(A), written g_*,
    mu(g; a, b), a normalized map G x A x A -> Q/Z,
    gamma(g, h; a), a normalized map G x G x A -> Q/Z,

subject to

    (1) omega(a,b,c) - omega(g_*a, g_*b, g_*c)
            = mu(g; b,c) + mu(g; a,b+c) - mu(g; a+b,c) - mu(g; a,b)
    (2) mu(g; h_*a, h_*b) + mu(h; a,b) - mu(gh; a,b)
            = gamma(g,h; a+b) - gamma(g,h; a) - gamma(g,h; b)
    (3) gamma(gh,k; a) + gamma(g,h; k_*a) = gamma(h,k; a) + gamma(g,hk; a).

A fermion is a pair (f, eta) with f of order two and eta: A -> Q/Z subject to

    (b) eta(x) + eta(y) - eta(x+y) = omega(f,x,y) + omega(x,y,f) - omega(x,f,y)
    (c) a quadratic condition on eta (two readings, see ``check_fermion``)
    (d) eta(f) = 1/2.
"""

from dataclasses import dataclass, field
from itertools import product

from .braidpt import AbelianCocycle, RankFourFamily, rank_four_family
from .cochain import (
    QZ_COEFF,
    Cochain,
    ModuleCoeff,
    TrivialityVerdict,
    is_cocycle,
    triviality_finite,
    triviality_qz,
)
from .grp import (
    GModule,
    GroupHom,
    ModuleHom,
    cyclic_group,
    group_from_invariants,
)
from .qzlin import QZ

__all__ = [
    "ActionError",
    "FermionData",
    "FermionReport",
    "BosonicActionData",
    "ActionReport",
    "FermionicVerdict",
    "FunctorReport",
    "DualModule",
    "check_fermion",
    "find_fermions",
    "verify_bosonic_action",
    "verify_fermionic_action",
    "gamma_tilde",
    "ratio_table",
    "builtin_action",
    "verify_fermionic_functor",
    "dual_module",
    "z2_module",
    "monoidal_gamma",
    "pullback",
    "beta_shift",
    "trivial_action",
]

ZERO = QZ(0)
HALF = QZ(1, 2)


class ActionError(ValueError):
    """Action data that fails a precondition."""


def _qz_table(src, shape, name):
    """Normalize a callable, nested list or sparse dict into a nested list."""
    if callable(src):
        def build(prefix, rest):
            if not rest:
                return QZ.coerce(src(*prefix))
            return [build(prefix + (i,), rest[1:]) for i in range(rest[0])]
        return build((), tuple(shape))
    if isinstance(src, dict):
        def build_zero(rest):
            if not rest:
                return ZERO
            return [build_zero(rest[1:]) for _ in range(rest[0])]
        out = build_zero(tuple(shape))
        for key, v in src.items():
            if isinstance(key, str):
                key = tuple(int(t) for t in key.split("|"))
            if len(key) != len(shape) or any(not 0 <= k < n for k, n in zip(key, shape)):
                raise ActionError(f"{name}: bad key {key}")
            cur = out
            for k in key[:-1]:
                cur = cur[k]
            cur[key[-1]] = QZ.coerce(v)
        return out

    def conv(x, rest):
        if not rest:
            return QZ.coerce(x)
        if len(x) != rest[0]:
            raise ActionError(f"{name}: table has the wrong shape")
        return [conv(y, rest[1:]) for y in x]
    return conv(src, tuple(shape))


def _host(host):
    """Split ``host`` into (A, omega, c-or-None)."""
    if isinstance(host, RankFourFamily):
        host = host.cocycle
    if isinstance(host, AbelianCocycle):
        return host.A, host.omega, host.c
    A, omega = host
    if not isinstance(omega, Cochain):
        omega = Cochain.from_function(A, QZ_COEFF, 3, omega)
    return A, omega, None


# -- fermions --------------------------------------------------------------------

@dataclass
class FermionReport:
    """Conditions (a)-(d) of a candidate fermion; truthy iff all hold."""

    a: bool
    b: list
    c: list
    d: bool
    condition_c: str = "literal"

    @property
    def valid(self):
        return self.a and not self.b and not self.c and self.d

    def __bool__(self):
        return self.valid

    def to_json(self):
        return {"valid": self.valid, "a": self.a, "b_violations": [list(t) for t in self.b],
                "c_violations": list(self.c), "d": self.d, "condition_c": self.condition_c}


class FermionData:
    """A candidate fermion (f, eta) in pointed data.

    ``host`` is an AbelianCocycle, a RankFourFamily or a pair (A, omega);
    ``eta`` is a list of Q/Z values indexed by A (or a callable).
    """

    def __init__(self, host, f, eta, half_braiding=None):
        self.A, self.omega, self.c = _host(host)
        self.f = f
        if callable(eta):
            eta = [eta(x) for x in range(self.A.order)]
        self.eta = [QZ.coerce(v) for v in eta]
        if len(self.eta) != self.A.order:
            raise ActionError("eta needs one value per element of A")
        self.half_braiding = half_braiding

    def __repr__(self):
        return f"FermionData(f={self.f}, eta={[str(v) for v in self.eta]})"

    def __eq__(self, other):
        return (isinstance(other, FermionData) and self.A == other.A and self.f == other.f
                and self.eta == other.eta and self.omega == other.omega)

    def to_json(self):
        return {"f": self.f, "eta": [v.to_json() for v in self.eta],
                "half_braiding": self.half_braiding}


def _w_cochain(A, omega, f):
    """W(x, y) = omega(f,x,y) + omega(x,y,f) - omega(x,f,y)."""
    return Cochain.from_function(
        A, QZ_COEFF, 2, lambda x, y: omega(f, x, y) + omega(x, y, f) - omega(x, f, y))


def check_fermion(fd, condition_c="literal"):
    """Verify (a)-(d) for a FermionData.

    Condition (c) comes in two readings:

    ``literal``      omega(x,f,f) + omega(f,x,f) - omega(x,f,f) + 2 eta(x) = 0
    ``alternative``  2 eta(x) + omega(f,x,f) - omega(x,f,f) - omega(f,f,x) = 0
    """
    if condition_c not in ("literal", "alternative"):
        raise ActionError("condition_c must be 'literal' or 'alternative'")
    A, om, f, eta = fd.A, fd.omega, fd.f, fd.eta
    a_ok = A.is_abelian and f != 0 and A.mul(f, f) == 0
    b_bad = []
    for x, y in product(range(A.order), repeat=2):
        lhs = eta[x] + eta[y] - eta[A.mul(x, y)]
        rhs = om(f, x, y) + om(x, y, f) - om(x, f, y)
        if lhs != rhs:
            b_bad.append((x, y))
    c_bad = []
    for x in range(A.order):
        if condition_c == "literal":
            val = om(x, f, f) + om(f, x, f) - om(x, f, f) + eta[x] * 2
        else:
            val = eta[x] * 2 + om(f, x, f) - om(x, f, f) - om(f, f, x)
        if val != ZERO:
            c_bad.append(x)
    return FermionReport(a_ok, b_bad, c_bad, eta[f] == HALF, condition_c)


def _characters(A):
    """All homomorphisms A -> Q/Z as value lists (A given by invariants)."""
    if A.factors is None:
        raise ActionError("A must be presented by invariant factors")
    out = []
    for coeffs in product(*(range(d) for d in A.factors)):
        out.append([sum((QZ(c * r, d) for c, r, d in zip(coeffs, A.elements[x], A.factors)), ZERO)
                    for x in range(A.order)])
    return out


def find_fermions(A, omega=None, c=None, condition_c="literal"):
    """Every fermion (f, eta) of pointed data on an abelian group A.

    ``A`` may be an AbelianCocycle / RankFourFamily (then ``omega`` and ``c``
    are taken from it) or a FinGroup with ``omega``.  For each order-two f the
    map eta is a solution of d(eta) = W_f, hence a particular solution plus a
    character; the candidates are then filtered by (c) and (d).  When a
    braiding c is known, each result records whether eta(a) = c(a, f).
    """
    if isinstance(A, (AbelianCocycle, RankFourFamily)):
        host = A
        A, omega, c0 = _host(host)
        c = c if c is not None else c0
    else:
        if omega is None:
            omega = Cochain.zero(A, QZ_COEFF, 3)
        host = (A, omega)
        _, omega, _ = _host(host)
        host = (A, omega)
    if not A.is_abelian:
        raise ActionError("A must be abelian")
    if not is_cocycle(omega):
        raise ActionError("omega is not a 3-cocycle")
    if c is not None and not callable(c):
        table = c
        c = lambda x, y: QZ.coerce(table[x][y])
    chars = None
    out = []
    for f in range(1, A.order):
        if A.mul(f, f) != 0:
            continue
        W = _w_cochain(A, omega, f)
        if not is_cocycle(W):
            continue
        verdict = triviality_qz(W)
        if not verdict.is_trivial:
            continue
        eta0 = [verdict.witness(x) for x in range(A.order)]
        if chars is None:
            chars = _characters(A)
        for ch in chars:
            eta = [u + v for u, v in zip(eta0, ch)]
            fd = FermionData(host, f, eta)
            if check_fermion(fd, condition_c):
                if c is not None:
                    fd.half_braiding = all(eta[x] == c(x, f) for x in range(A.order))
                out.append(fd)
    return out


# -- bosonic actions -----------------------------------------------------------------

class BosonicActionData:
    """An action candidate (star, mu, gamma) of G on pointed data.

    ``target`` is an AbelianCocycle, a RankFourFamily or a pair (A, omega).
    ``star`` is a list of permutations of A (one per element of G; None for
    the trivial action).  ``mu`` and ``gamma`` are nested lists
    ``mu[g][a][b]`` and ``gamma[g][h][a]``, callables, or sparse dicts
    (missing entries are 0); ``gamma=None`` means "not yet chosen" and
    is stored as zero.
    """

    def __init__(self, G, target, star=None, mu=None, gamma=None, name=None):
        self.G = G
        self.target = target
        self.A, self.omega, self.c = _host(target)
        nG, nA = G.order, self.A.order
        if star is None:
            star = [list(range(nA)) for _ in range(nG)]
        self.star = [tuple(p) for p in star]
        if len(self.star) != nG or any(sorted(p) != list(range(nA)) for p in self.star):
            raise ActionError("star must give a permutation of A for every g")
        self.mu = _qz_table(mu if mu is not None else {}, (nG, nA, nA), "mu")
        self.gamma = _qz_table(gamma if gamma is not None else {}, (nG, nG, nA), "gamma")
        self.name = name

    def act(self, g, a):
        return self.star[g][a]

    def m(self, g, a, b):
        return self.mu[g][a][b]

    def gam(self, g, h, a):
        return self.gamma[g][h][a]

    def with_gamma(self, gamma):
        return BosonicActionData(self.G, self.target, self.star, self.mu, gamma, self.name)

    def to_json(self):
        G = self.G

        def sparse(table, depth):
            out = {}

            def walk(t, key):
                if len(key) == depth:
                    if t != ZERO:
                        out["|".join(map(str, key))] = t.to_json()
                    return
                for i, s in enumerate(t):
                    walk(s, key + (i,))
            walk(table, ())
            return out
        return {
            "group": G.to_json(),
            "star": [list(p) for p in self.star],
            "mu": sparse(self.mu, 3),
            "gamma": sparse(self.gamma, 3),
        }


@dataclass
class ActionReport:
    """First violation per axiom family (None when the family holds)."""

    star: object = None
    normalization: object = None
    axiom1: object = None
    axiom2: object = None
    axiom3: object = None
    counts: dict = field(default_factory=dict)

    @property
    def valid(self):
        return all(x is None for x in (self.star, self.normalization,
                                       self.axiom1, self.axiom2, self.axiom3))

    def __bool__(self):
        return self.valid

    def to_json(self):
        def j(x):
            return list(x) if isinstance(x, tuple) else x
        return {"valid": self.valid, "star": j(self.star), "normalization": j(self.normalization),
                "axiom1": j(self.axiom1), "axiom2": j(self.axiom2), "axiom3": j(self.axiom3),
                "violation_counts": self.counts}


def _star_violation(data):
    G, A, s = data.G, data.A, data.star
    if s[0] != tuple(range(A.order)):
        return ("identity does not act trivially",)
    for g in range(G.order):
        for a, b in product(range(A.order), repeat=2):
            if s[g][A.mul(a, b)] != A.mul(s[g][a], s[g][b]):
                return ("not an automorphism", g, a, b)
    for g, h in product(range(G.order), repeat=2):
        gh = G.mul(g, h)
        for a in range(A.order):
            if s[gh][a] != s[g][s[h][a]]:
                return ("not a homomorphism", g, h, a)
    return None


def _normalization_violation(data):
    G, A = data.G, data.A
    for g, a, b in product(range(G.order), range(A.order), range(A.order)):
        if (g == 0 or a == 0 or b == 0) and data.mu[g][a][b] != ZERO:
            return ("mu", g, a, b)
    for g, h, a in product(range(G.order), range(G.order), range(A.order)):
        if (g == 0 or h == 0 or a == 0) and data.gamma[g][h][a] != ZERO:
            return ("gamma", g, h, a)
    return None


def _axiom1_defect(data, g, a, b, c):
    A, om, s, mu = data.A, data.omega, data.star[g], data.mu[g]
    lhs = om(a, b, c) - om(s[a], s[b], s[c])
    rhs = mu[b][c] + mu[a][A.mul(b, c)] - mu[A.mul(a, b)][c] - mu[a][b]
    return lhs - rhs


def _composition_defect(data, g, h, a, b):
    """R(a,b) = mu(g; h_*a, h_*b) + mu(h; a,b) - mu(gh; a,b)."""
    sh = data.star[h]
    return data.mu[g][sh[a]][sh[b]] + data.mu[h][a][b] - data.mu[data.G.mul(g, h)][a][b]


def _axiom2_defect(data, gamma, g, h, a, b):
    A = data.A
    rhs = gamma[g][h][A.mul(a, b)] - gamma[g][h][a] - gamma[g][h][b]
    return _composition_defect(data, g, h, a, b) - rhs


def _axiom3_defect(data, gamma, g, h, k, a):
    G = data.G
    lhs = gamma[G.mul(g, h)][k][a] + gamma[g][h][data.star[k][a]]
    rhs = gamma[h][k][a] + gamma[g][G.mul(h, k)][a]
    return lhs - rhs


def verify_bosonic_action(data, families=("star", "normalization", "axiom1", "axiom2", "axiom3")):
    """Check the action axioms exhaustively, recording the first violation
    and the number of violations in each family."""
    G, A = data.G, data.A
    rep = ActionReport()
    nG, nA = range(G.order), range(A.order)
    if "star" in families:
        rep.star = _star_violation(data)
    if "normalization" in families:
        rep.normalization = _normalization_violation(data)
    if "axiom1" in families:
        n = 0
        for g, a, b, c in product(nG, nA, nA, nA):
            if _axiom1_defect(data, g, a, b, c) != ZERO:
                n += 1
                if rep.axiom1 is None:
                    rep.axiom1 = (g, a, b, c)
        rep.counts["axiom1"] = n
    if "axiom2" in families:
        n = 0
        for g, h, a, b in product(nG, nG, nA, nA):
            if _axiom2_defect(data, data.gamma, g, h, a, b) != ZERO:
                n += 1
                if rep.axiom2 is None:
                    rep.axiom2 = (g, h, a, b)
        rep.counts["axiom2"] = n
    if "axiom3" in families:
        n = 0
        for g, h, k, a in product(nG, nG, nG, nA):
            if _axiom3_defect(data, data.gamma, g, h, k, a) != ZERO:
                n += 1
                if rep.axiom3 is None:
                    rep.axiom3 = (g, h, k, a)
        rep.counts["axiom3"] = n
    return rep


def _require_action(data):
    rep = verify_bosonic_action(data)
    if not rep:
        raise ActionError(f"bosonic axioms fail: {rep.to_json()}")
    return rep


def trivial_action(G, target):
    """star = id, mu = gamma = 0."""
    return BosonicActionData(G, target, name="trivial")


def builtin_action(variant, k=None):
    """The two tabulated actions of Z/2 = {e, u} on rank-four data.

    Both use u_*(f) = f and u_*(v) = v + f.  ``caso1`` acts on KleinFour
    data (default k = 0), ``caso2`` on Cyclic4 data (default k = 1/8).
    Rows and columns of mu(u; -, -) and gamma(u, u; -) are listed in the
    order v, f, f+v.

    ``caso2`` is the table as displayed; it violates the second and third
    axioms.  ``caso2_corrected`` keeps its mu and sets gamma to 0, which
    satisfies all three.
    """
    key = str(variant).lower().replace("-", "_").replace(" ", "")
    q, h = QZ(1, 4), HALF
    if key == "caso1":
        fam = rank_four_family("KleinFour", 0 if k is None else k)
        mu_rows = [[h, h, ZERO], [ZERO, ZERO, ZERO], [h, h, ZERO]]
        gamma_row = [q, ZERO, q]
    elif key in ("caso2", "caso2_corrected"):
        fam = rank_four_family("Cyclic4", QZ(1, 8) if k is None else k)
        mu_rows = [[ZERO, h, ZERO], [ZERO, ZERO, ZERO], [ZERO, h, ZERO]]
        gamma_row = [ZERO, ZERO, q] if key == "caso2" else [ZERO, ZERO, ZERO]
    else:
        raise ActionError(f"unknown built-in action {variant!r}")
    A = fam.A
    G = cyclic_group(2)
    el = fam.elements
    v, f, vf = el["v"], el["f"], el["v+f"]
    order = [v, f, vf]
    u_star = list(range(A.order))
    u_star[v], u_star[f], u_star[vf] = vf, f, v
    mu, gamma = {}, {}
    for i, a in enumerate(order):
        for j, b in enumerate(order):
            if mu_rows[i][j]:
                mu[(1, a, b)] = mu_rows[i][j]
        if gamma_row[i]:
            gamma[(1, 1, a)] = gamma_row[i]
    star = [list(range(A.order)), u_star]
    return BosonicActionData(G, fam, star, mu, gamma, name=key)


def monoidal_gamma(data):
    """A gamma satisfying the second axiom for the given (star, mu).

    gamma(g, h; -) is a solution of d(gamma) = -R_{g,h} with R the
    composition defect of mu; raises when some R_{g,h} is not a coboundary.
    """
    G, A = data.G, data.A
    gamma = {}
    for g, h in product(range(1, G.order), repeat=2):
        R = Cochain.from_function(A, QZ_COEFF, 2,
                                  lambda a, b: -_composition_defect(data, g, h, a, b))
        chk = is_cocycle(R)
        if not chk:
            raise ActionError(f"composition defect at {(g, h)} is not a 2-cocycle")
        verdict = triviality_qz(R)
        if not verdict.is_trivial:
            raise ActionError(f"no gamma exists at {(g, h)}: the composition defect is nontrivial")
        for a in range(1, A.order):
            val = verdict.witness(a)
            if val:
                gamma[(g, h, a)] = val
    return data.with_gamma(gamma)


def pullback(data, rho):
    """The action of G' obtained by composing with rho: G' -> G.

    ``rho`` is a GroupHom or a list of images.
    """
    if not isinstance(rho, GroupHom):
        raise ActionError("rho must be a GroupHom into the acting group")
    if rho.target != data.G:
        raise ActionError("rho does not land in the acting group")
    H = rho.source
    im = [rho(x) for x in range(H.order)]
    star = [data.star[im[x]] for x in range(H.order)]
    mu = [data.mu[im[x]] for x in range(H.order)]
    gamma = [[data.gamma[im[x]][im[y]] for y in range(H.order)] for x in range(H.order)]
    return BosonicActionData(H, data.target, star, mu, gamma, name=data.name)


# -- characters and the dual module --------------------------------------------------

class DualModule:
    """A^ = Hom(A, Q/Z) as a G-module, with (g . chi)(a) = chi((g^-1)_* a).

    A character with coordinates c (a residue vector modulo the invariant
    factors d_j of A) is chi_c(a) = sum_j c_j a_j / d_j.
    """

    def __init__(self, G, A, star):
        if A.factors is None:
            raise ActionError("A must be presented by invariant factors")
        self.G, self.A = G, A
        self.star = [tuple(p) for p in star]
        self.group = group_from_invariants(list(A.factors))
        self.values = [self._char_values(self.group.elements[c]) for c in range(self.group.order)]
        self._by_values = {tuple(v): i for i, v in enumerate(self.values)}
        r = len(A.factors)
        gens = [A.generator(j) for j in range(r)]
        perms = []
        for g in range(G.order):
            ginv = G.inv(g)
            perm = []
            for c in range(self.group.order):
                chi = self.values[c]
                perm.append(self.index([chi[self.star[ginv][a]] for a in range(A.order)]))
            perms.append(perm)
        self._gens = gens
        self.module = GModule(G, self.group, perms)

    def _char_values(self, coeffs):
        A = self.A
        return [sum((QZ(c * r, d) for c, r, d in zip(coeffs, A.elements[x], A.factors)), ZERO)
                for x in range(A.order)]

    def char(self, c):
        """Values of the character with module index c."""
        return self.values[c]

    def index(self, values):
        """Module index of a character given by its values (ActionError if
        the map is not a homomorphism)."""
        try:
            return self._by_values[tuple(QZ.coerce(v) for v in values)]
        except KeyError:
            raise ActionError("map is not a character of A") from None

    def evaluate(self, c, a):
        return self.values[c][a]

    def restriction(self, f):
        """r: A^ -> Z/2, chi -> 2 chi(f), for an f of order two fixed by star."""
        if any(p[f] != f for p in self.star):
            raise ActionError("restriction needs f fixed by the action")
        Z2 = z2_module(self.G)
        images = []
        for c in range(self.group.order):
            v = self.values[c][f]
            if v == ZERO:
                images.append(0)
            elif v == HALF:
                images.append(1)
            else:
                raise ActionError("f does not have order two")
        return ModuleHom(self.module, Z2, images)


def dual_module(G, A, star):
    return DualModule(G, A, star)


_Z2_CACHE = {}


def z2_module(G):
    """Z/2 with trivial G-action."""
    if G not in _Z2_CACHE:
        _Z2_CACHE[G] = GModule.trivial_module(G, cyclic_group(2))
    return _Z2_CACHE[G]


def beta_shift(data, dual, beta):
    """Shift gamma by a character-valued 2-cocycle beta over A^.

    gamma'(g, h; a) = gamma(g, h; a) + beta(h^-1, g^-1)(a): the third axiom
    is a cocycle condition for a right action, so a left cocycle beta enters
    through the inversion-reversal (g, h) -> (h^-1, g^-1).
    """
    if beta.coeff != ModuleCoeff(dual.module):
        raise ActionError("beta must take values in the dual module")
    G, A = data.G, data.A
    gamma = [[[data.gamma[g][h][a] + dual.evaluate(beta(G.inv(h), G.inv(g)), a)
               for a in range(A.order)] for h in range(G.order)] for g in range(G.order)]
    return data.with_gamma(gamma)


# -- fermionic actions ----------------------------------------------------------------

def gamma_tilde(data, fermion, check=True):
    """The Z/2-valued 2-cochain (g, h) -> 2 gamma(g, h; f)."""
    if check:
        _require_action(data)
    G = data.G
    f = fermion.f
    Z2 = z2_module(G)
    vals = []
    for g, h in product(range(1, G.order), repeat=2):
        v = data.gamma[g][h][f]
        if v == ZERO:
            vals.append(0)
        elif v == HALF:
            vals.append(1)
        else:
            raise ActionError(f"gamma({g},{h}; f) = {v} is not in {{0, 1/2}}")
    return Cochain(G, ModuleCoeff(Z2), 2, vals)


def ratio_table(data, fermion, g):
    """For each a: (mu(g;f,a) - mu(g;a,f), eta(g_*a) - eta(a))."""
    f, eta = fermion.f, fermion.eta
    return [(data.mu[g][f][a] - data.mu[g][a][f], eta[data.star[g][a]] - eta[a])
            for a in range(data.A.order)]


@dataclass
class FermionicVerdict:
    """Outcome of :func:`verify_fermionic_action`."""

    condition_a: bool
    condition_b: dict
    gamma_tilde: Cochain
    gamma_tilde_cocycle: bool
    class_matches_alpha: bool
    witness: object = None
    verdict: TrivialityVerdict = None

    @property
    def condition_b_ok(self):
        return all(self.condition_b.values())

    @property
    def valid(self):
        return self.condition_a and self.condition_b_ok and self.class_matches_alpha

    def __bool__(self):
        return self.valid

    def to_json(self):
        from .serialize import cochain_to_json
        return {
            "valid": self.valid,
            "condition_a": self.condition_a,
            "condition_b_failures": [list(k) for k, ok in sorted(self.condition_b.items()) if not ok],
            "gamma_tilde": cochain_to_json(self.gamma_tilde),
            "gamma_tilde_cocycle": self.gamma_tilde_cocycle,
            "class_matches_alpha": self.class_matches_alpha,
            "witness": cochain_to_json(self.witness) if self.witness is not None else None,
        }


def as_z2_cochain(G, alpha):
    """Coerce alpha (Cochain, callable on pairs, or None for 0) to a
    Z/2-valued 2-cochain on G."""
    coeff = ModuleCoeff(z2_module(G))
    if alpha is None:
        return Cochain.zero(G, coeff, 2)
    if isinstance(alpha, Cochain):
        if alpha.coeff != coeff:
            raise ActionError("alpha must be a Z/2-valued 2-cochain")
        return alpha
    if callable(alpha):
        return Cochain.from_function(G, coeff, 2, lambda g, h: int(alpha(g, h)) % 2)
    return Cochain(G, coeff, 2, [int(x) % 2 for x in alpha])


def verify_fermionic_action(data, fermion, alpha=None):
    """Check that a bosonic action is fermionic for the super-group (G, alpha).

    (a) g_* f = f; (b) mu(g;f,a) - mu(g;a,f) = eta(g_*a) - eta(a); then the
    class of gamma~ is compared with alpha.
    """
    _require_action(data)
    G, A = data.G, data.A
    if fermion.A != A:
        raise ActionError("fermion lives on a different group")
    alpha = as_z2_cochain(G, alpha)
    if not is_cocycle(alpha):
        raise ActionError("alpha is not a 2-cocycle")
    f, eta = fermion.f, fermion.eta
    cond_a = all(data.star[g][f] == f for g in range(G.order))
    cond_b = {}
    for g, a in product(range(G.order), range(A.order)):
        lhs = data.mu[g][f][a] - data.mu[g][a][f]
        rhs = eta[data.star[g][a]] - eta[a]
        cond_b[(g, a)] = lhs == rhs
    gt = gamma_tilde(data, fermion, check=False)
    gt_cocycle = bool(is_cocycle(gt))
    verdict = triviality_finite(gt - alpha) if gt_cocycle else None
    matches = verdict is not None and verdict.is_trivial
    return FermionicVerdict(cond_a, cond_b, gt, gt_cocycle, matches,
                            verdict.witness if matches else None, verdict)


# -- fermionic functors ---------------------------------------------------------------

@dataclass
class FunctorReport:
    homomorphism: bool
    sends_f: bool
    coherence: list
    fermionic: list

    @property
    def valid(self):
        return self.homomorphism and self.sends_f and not self.coherence and not self.fermionic

    def __bool__(self):
        return self.valid

    def to_json(self):
        return {"valid": self.valid, "homomorphism": self.homomorphism, "sends_f": self.sends_f,
                "coherence_violations": [list(t) for t in self.coherence],
                "fermionic_violations": list(self.fermionic)}


def verify_fermionic_functor(src, dst, F, tau, limit=None):
    """Check a pointed monoidal functor (F, tau) between fermionic data.

    Coherence:  omega1(g,h,l) + tau(gh,l) + tau(g,h)
                    = tau(g,hl) + tau(h,l) + omega2(Fg,Fh,Fl);
    fermionic:  F(f) = f' and tau(f,g) - tau(g,f) = eta'(F g) - eta(g).
    """
    A1, A2 = src.A, dst.A
    if isinstance(F, GroupHom):
        images = [F(x) for x in range(A1.order)]
    else:
        images = list(F)
    if len(images) != A1.order:
        raise ActionError("F needs one image per element of the source")
    is_hom = all(images[A1.mul(x, y)] == A2.mul(images[x], images[y])
                 for x, y in product(range(A1.order), repeat=2))
    t = _qz_table(tau, (A1.order, A1.order), "tau")
    o1, o2 = src.omega, dst.omega
    coh = []
    for g, h, l in product(range(A1.order), repeat=3):
        lhs = o1(g, h, l) + t[A1.mul(g, h)][l] + t[g][h]
        rhs = t[g][A1.mul(h, l)] + t[h][l] + o2(images[g], images[h], images[l])
        if lhs != rhs:
            coh.append((g, h, l))
            if limit is not None and len(coh) >= limit:
                break
    f = src.f
    ferm = [g for g in range(A1.order)
            if t[f][g] - t[g][f] != dst.eta[images[g]] - src.eta[g]]
    return FunctorReport(is_hom, images[f] == dst.f, coh, ferm)
