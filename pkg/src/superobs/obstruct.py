"""Obstruction classes for lifting problems and for extensions.

* O3 for pointed actions: the defect of a candidate gamma in the third
  action axiom, as a 3-cochain valued in the dual group A^.
* The fermionic refinement: the class of theta - alpha in H^2(G, Z/2) when
  the restriction r: A^ -> Z/2 vanishes, otherwise its image under the
  connecting map of 0 -> ker r -> A^ -> Z/2 -> 0.  Equivalently, an
  alpha-lifting exists iff theta - alpha lies in the image of r_*.
* O4 for a 2-cocycle mu2: G x G -> A on non-degenerate braided data
  (seven-term form for trivial star, ten-term form in general) and verdict
  assembly with certificates.

All formulas are additive in Q/Z; term order follows the multiplicative
expressions they transcribe, so each sign can be audited term by term.
"""

import random
from dataclasses import dataclass, field
from itertools import product

from .braidpt import AbelianCocycle, RankFourFamily, check_abelian_cocycle, mueger_center
from .cochain import (
    QZ_COEFF,
    Cochain,
    CohomologyLattice,
    LazyCochain,
    ModuleCoeff,
    TrivialityVerdict,
    cocycle_basis,
    connecting_map,
    in_image_upto_coboundary,
    is_cocycle,
    pushforward,
    triviality_finite,
    triviality_qz,
)
from .fermact import (
    ActionError,
    BosonicActionData,
    FermionData,
    _axiom1_defect,
    _axiom2_defect,
    _star_violation,
    as_z2_cochain,
    builtin_action,
    dual_module,
    gamma_tilde,
    pullback,
    trivial_action,
    verify_bosonic_action,
    z2_module,
)
from .grp import GroupError, GroupHom, ModuleHom, ShortExactSeq, subgroup_module
from .lyndon import DENSE_LIMIT, alt_alt_certificate, component_class, lyndon_normalize
from .qzlin import QZ

__all__ = [
    "ObstructionError",
    "StrategyError",
    "TwistCocycle",
    "ObstructionReport",
    "LiftingResult",
    "RankFourSetup",
    "o3_pointed",
    "o3_pointed_class",
    "o3_fermionic",
    "alpha_lifting_exists",
    "rank_four_setup",
    "extension_classification",
    "o4_twisted_identity",
    "o4_general",
    "anomaly_verdict",
    "reproduce_paper",
    "DENSE_LIMIT",
]

ZERO = QZ(0)


class ObstructionError(ValueError):
    """Invalid inputs to an obstruction computation."""


class StrategyError(ObstructionError):
    """The requested strategy is infeasible for the instance size."""


# -- twisted 2-cocycles ------------------------------------------------------------

class TwistCocycle:
    """A normalized map mu2: G x G -> A (A-indices), a 2-cocycle for the
    action of G on A through ``star``:

        g_*(mu(h, k)) + mu(g, hk) = mu(g, h) + mu(gh, k).

    ``mu2`` is a nested list, a callable on index pairs, or a sparse dict;
    ``star`` a list of permutations of A (None for the trivial action).
    """

    def __init__(self, G, A, mu2, star=None):
        self.G, self.A = G, A
        nG = G.order
        if callable(mu2):
            table = [[mu2(g, h) if g and h else 0 for h in range(nG)] for g in range(nG)]
        elif isinstance(mu2, dict):
            table = [[0] * nG for _ in range(nG)]
            for key, v in mu2.items():
                if isinstance(key, str):
                    key = tuple(int(t) for t in key.split("|"))
                g, h = key
                table[g][h] = int(v)
        else:
            table = [list(map(int, row)) for row in mu2]
        if len(table) != nG or any(len(r) != nG for r in table):
            raise ObstructionError("mu2 table has the wrong shape")
        if any(not 0 <= x < A.order for r in table for x in r):
            raise ObstructionError("mu2 values must be element indices of A")
        if any(table[0][h] or table[h][0] for h in range(nG)):
            raise ObstructionError("mu2 is not normalized")
        self.table = table
        self.star = None if star is None else [tuple(p) for p in star]

    @classmethod
    def bilinear(cls, G, A, matrix, star=None):
        """mu(g, h) = sum_ij M_ij g_i h_j taken in a cyclic A (G given by
        invariant factors, coordinates read as integers)."""
        if A.factors is None or len(A.factors) != 1:
            raise ObstructionError("bilinear twists need a cyclic A")
        m = A.factors[0]
        E = G.elements
        rows = [(i, j, c) for i, row in enumerate(matrix) for j, c in enumerate(row) if c]

        def mu(g, h):
            return A.index([sum(c * E[g][i] * E[h][j] for i, j, c in rows) % m])
        return cls(G, A, mu, star)

    def __call__(self, g, h):
        return self.table[g][h]

    def act(self, g, a):
        return a if self.star is None else self.star[g][a]

    @property
    def trivial_star(self):
        return self.star is None or all(p == tuple(range(self.A.order)) for p in self.star)

    def violations(self, limit=None, samples=None, seed=0):
        """Failures of the twisted cocycle identity; exhaustive unless
        ``samples`` is given (then that many random triples are tested)."""
        G, A = self.G, self.A
        if samples is None:
            triples = product(range(G.order), repeat=3)
        else:
            rnd = random.Random(seed)
            triples = [tuple(rnd.randrange(G.order) for _ in range(3)) for _ in range(samples)]
        bad = []
        t = self.table
        for g, h, k in triples:
            lhs = A.mul(self.act(g, t[h][k]), t[g][G.mul(h, k)])
            rhs = A.mul(t[g][h], t[G.mul(g, h)][k])
            if lhs != rhs:
                bad.append((g, h, k))
                if limit is not None and len(bad) >= limit:
                    break
        return bad

    def check(self, exhaustive_limit=200000):
        """Exhaustive check for |G|^3 <= exhaustive_limit, else 2000 samples."""
        n = self.G.order ** 3
        bad = self.violations(limit=1, samples=None if n <= exhaustive_limit else 2000)
        if bad:
            raise ObstructionError(f"mu2 is not a twisted 2-cocycle (violation at {bad[0]})")

    def shifted(self, nu):
        """mu2 + d(nu) for nu: G -> A (list of A-indices, nu[e] = 0):
        (d nu)(g, h) = g_* nu(h) - nu(gh) + nu(g)."""
        G, A = self.G, self.A
        if nu[0] != 0:
            raise ObstructionError("nu must be normalized")

        def mu(g, h):
            d = A.mul(A.mul(self.act(g, nu[h]), A.inv(nu[G.mul(g, h)])), nu[g])
            return A.mul(self.table[g][h], d)
        return TwistCocycle(G, A, mu, self.star)

    def to_json(self):
        out = {"table": {f"{g}|{h}": self.table[g][h]
                         for g in range(1, self.G.order) for h in range(1, self.G.order)
                         if self.table[g][h]}}
        if self.star is not None:
            out["star"] = [list(p) for p in self.star]
        return out


# -- reports -----------------------------------------------------------------------

@dataclass
class ObstructionReport:
    """An obstruction cochain with its verdict.

    ``status`` is "trivial", "nontrivial" or "inconclusive"; ``verdict`` a
    TrivialityVerdict or a certificate dict; ``scenario`` records inputs.
    """

    obstruction: object
    status: str
    strategy: str
    verdict: object = None
    certificate: dict = field(default_factory=dict)
    scenario: dict = field(default_factory=dict)

    @property
    def is_trivial(self):
        return self.status == "trivial"

    def to_json(self, include_obstruction=True):
        from .serialize import cochain_to_json, input_hash, to_jsonable
        out = {"status": self.status, "strategy": self.strategy,
               "certificate": to_jsonable(self.certificate),
               "scenario": to_jsonable(self.scenario)}
        if isinstance(self.verdict, TrivialityVerdict):
            out["verdict"] = self.verdict.to_json()
        elif self.verdict is not None:
            out["verdict"] = to_jsonable(self.verdict)
        if include_obstruction and isinstance(self.obstruction, Cochain):
            out["obstruction"] = cochain_to_json(self.obstruction)
        out["input_hash"] = input_hash(out["scenario"])
        return out


@dataclass
class LiftingResult:
    """Outcome of :func:`alpha_lifting_exists`; truthy iff a lifting exists."""

    exists: bool
    tau: object = None
    q: object = None

    def __bool__(self):
        return self.exists

    def to_json(self):
        from .serialize import cochain_to_json
        return {"exists": self.exists,
                "tau": cochain_to_json(self.tau) if self.tau is not None else None,
                "q": cochain_to_json(self.q) if self.q is not None else None}


# -- O3 --------------------------------------------------------------------------

def o3_pointed(data, candidate_gamma, dual=None):
    """The defect of ``candidate_gamma`` in the third action axiom.

    Needs star a homomorphism, mu satisfying the first axiom and the
    candidate satisfying the second.  The right-convention defect

        O(g,h,l)(a) = gamma(h,l;a) + gamma(g,hl;a) - gamma(gh,l;a) - gamma(g,h;l_*a)

    is a character of A for every (g,h,l); it is returned as the left
    3-cochain (x,y,z) -> O(z^-1, y^-1, x^-1) valued in the G-module A^.
    """
    G, A = data.G, data.A
    cand = data.with_gamma(candidate_gamma)
    bad = _star_violation(cand)
    if bad is not None:
        raise ObstructionError(f"star is not a homomorphism into Aut(A): {bad}")
    for g, a, b, c in product(range(G.order), *[range(A.order)] * 3):
        if _axiom1_defect(cand, g, a, b, c) != ZERO:
            raise ObstructionError(f"mu fails the first axiom at {(g, a, b, c)}")
    for g, h, a, b in product(range(G.order), range(G.order), range(A.order), range(A.order)):
        if _axiom2_defect(cand, cand.gamma, g, h, a, b) != ZERO:
            raise ObstructionError(f"candidate gamma fails the second axiom at {(g, h, a, b)}")
    if dual is None:
        dual = dual_module(G, A, data.star)
    gm, s = cand.gamma, cand.star
    right = {}
    for g, h, l in product(range(G.order), repeat=3):
        hl, gh = G.mul(h, l), G.mul(g, h)
        vals = [gm[h][l][a] + gm[g][hl][a] - gm[gh][l][a] - gm[g][h][s[l][a]]
                for a in range(A.order)]
        try:
            right[(g, h, l)] = dual.index(vals)
        except ActionError:
            raise ObstructionError(f"defect at {(g, h, l)} is not a character") from None
    inv = G.inv
    return Cochain.from_function(G, ModuleCoeff(dual.module), 3,
                                 lambda x, y, z: right[(inv(z), inv(y), inv(x))])


def o3_pointed_class(data, candidate_gamma, dual=None):
    """O3 with its triviality verdict over A^."""
    o3 = o3_pointed(data, candidate_gamma, dual)
    chk = is_cocycle(o3)
    if not chk:
        raise ObstructionError(f"O3 is not a cocycle (violation at {chk.violation})")
    verdict = triviality_finite(o3)
    return ObstructionReport(o3, verdict.status, "dense", verdict,
                             {"zero": o3.is_zero()})


def _z2_cochain(G, x, what):
    try:
        return as_z2_cochain(G, x)
    except ActionError as exc:
        raise ObstructionError(f"{what}: {exc}") from None


def _ses_from(r_data):
    """Return a ShortExactSeq 0 -> ker r -> A^ -> Z/2 -> 0, or None when r is
    the zero map."""
    if r_data is None or r_data == "trivial":
        return None
    if isinstance(r_data, ShortExactSeq):
        return r_data
    if isinstance(r_data, ModuleHom):
        if r_data.violations(limit=1):
            raise ObstructionError("r is not an equivariant homomorphism")
        if r_data.is_zero():
            return None
        K, inc = subgroup_module(r_data.src, r_data.kernel())
        try:
            return ShortExactSeq(inc, r_data)
        except GroupError as exc:
            raise ObstructionError(f"malformed exact sequence: {exc}") from None
    raise ObstructionError("r_data must be 'trivial', a ModuleHom or a ShortExactSeq")


def o3_fermionic(theta, alpha, r_data, G=None):
    """Obstruction to an alpha-lifting.

    With r trivial: the class of theta - alpha in H^2(G, Z/2).  Otherwise
    the connecting map d(theta - alpha) in H^3(G, ker r).
    """
    if G is None:
        G = theta.G if isinstance(theta, Cochain) else alpha.G
    theta = _z2_cochain(G, theta, "theta")
    alpha = _z2_cochain(G, alpha, "alpha")
    for name, x in (("theta", theta), ("alpha", alpha)):
        chk = is_cocycle(x)
        if not chk:
            raise ObstructionError(f"{name} is not a 2-cocycle (violation at {chk.violation})")
    diff = theta - alpha
    ses = _ses_from(r_data)
    if ses is None:
        verdict = triviality_finite(diff)
        return ObstructionReport(diff, verdict.status, "H2-class", verdict,
                                 {"branch": "r trivial", "degree": 2})
    if ses.C != z2_module(G):
        raise ObstructionError("the quotient of the sequence must be Z/2 with trivial action")
    d2 = connecting_map(ses, diff)
    verdict = triviality_finite(d2)
    return ObstructionReport(d2, verdict.status, "connecting-map", verdict,
                             {"branch": "r nontrivial", "degree": 3,
                              "kernel_invariants": list(ses.A.M.factors)})


def alpha_lifting_exists(theta, alpha, r, G=None):
    """Is theta - alpha = r_*(tau) up to coboundary for a cocycle tau over A^?"""
    if G is None:
        G = theta.G if isinstance(theta, Cochain) else alpha.G
    theta = _z2_cochain(G, theta, "theta")
    alpha = _z2_cochain(G, alpha, "alpha")
    res = in_image_upto_coboundary(r, theta - alpha)
    if res is None:
        return LiftingResult(False)
    return LiftingResult(True, res[0], res[1])


# -- rank-four extensions -----------------------------------------------------------

@dataclass
class RankFourSetup:
    """A rank-four action pulled back along rho: G -> Z/2, with the fermion
    eta(a) = c(a, f), the dual module and the restriction r: A^ -> Z/2."""

    action: BosonicActionData
    fermion: FermionData
    dual: object
    r: ModuleHom
    rho: list

    @property
    def G(self):
        return self.action.G

    def theta(self):
        return gamma_tilde(self.action, self.fermion)

    def ses(self):
        return _ses_from(self.r)


def rank_four_setup(variant, G, rho, k=None):
    """Pull back the tabulated Z/2 action of the given variant along rho.

    ``rho`` lists 0/1 per element of G (a homomorphism G -> Z/2).  KleinFour
    uses the caso1 tables, Cyclic4 the corrected caso2 tables; a trivial rho
    gives the trivial action.
    """
    key = str(variant).lower()
    base = builtin_action("caso1" if "klein" in key else "caso2_corrected", k)
    Z2 = base.G
    try:
        hom = GroupHom(G, Z2, [int(x) % 2 for x in rho])
    except GroupError as exc:
        raise ObstructionError(f"rho is not a homomorphism: {exc}") from None
    if any(hom(x) for x in range(G.order)):
        action = pullback(base, hom)
    else:
        action = trivial_action(G, base.target)
    fam = base.target
    eta = [fam.cocycle.c(a, fam.f) for a in range(fam.A.order)]
    fermion = FermionData(fam, fam.f, eta, half_braiding=True)
    dual = dual_module(G, action.A, action.star)
    return RankFourSetup(action, fermion, dual, dual.restriction(fam.f),
                         [hom(x) for x in range(G.order)])


def _h2_image_order(r, G):
    """Order of the image of r_*: H^2(G, A^) -> H^2(G, Z/2) and of both groups."""
    src = CohomologyLattice(r.src, 2)
    dst = CohomologyLattice(r.dst, 2)
    gens = []
    for z in cocycle_basis(r.src, 2):
        gens.append(tuple(dst.coordinates(pushforward(r, z))))
    mods = dst.invariants
    span = {tuple(0 for _ in mods)}
    frontier = list(span)
    while frontier:
        nxt = []
        for x in frontier:
            for gvec in gens:
                y = tuple((a + b) % m for a, b, m in zip(x, gvec, mods))
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(span), src.invariants, dst.invariants


def extension_classification(setup, alpha):
    """Decide whether the pulled-back action admits an alpha-lifting, by the
    connecting-map criterion, cross-checked against image membership; on
    existence report the order of ker(r_*: H^2(G, A^) -> H^2(G, Z/2))."""
    G = setup.G
    theta = setup.theta()
    alpha = _z2_cochain(G, alpha, "alpha")
    rep = o3_fermionic(theta, alpha, setup.r)
    lift = alpha_lifting_exists(theta, alpha, setup.r)
    out = {
        "rho": setup.rho,
        "theta_zero": theta.is_zero(),
        "d2_status": rep.status,
        "lifting_exists": lift.exists,
        "criteria_agree": (rep.status == "trivial") == lift.exists,
    }
    if lift.exists:
        im, src_inv, dst_inv = _h2_image_order(setup.r, G)
        order = 1
        for d in src_inv:
            order *= d
        out["torsor"] = {"H2_dual_invariants": src_inv, "H2_Z2_invariants": dst_inv,
                         "image_order": im, "kernel_order": order // im}
    return out, rep, lift


# -- O4 ----------------------------------------------------------------------------

def _target_parts(ac):
    if isinstance(ac, RankFourFamily):
        ac = ac.cocycle
    if not isinstance(ac, AbelianCocycle):
        raise ObstructionError("target must be an AbelianCocycle")
    return ac


def _require_nondegenerate(ac):
    if not check_abelian_cocycle(ac, limit=1):
        raise ObstructionError("target is not an abelian 3-cocycle")
    if mueger_center(ac) != [0]:
        raise ObstructionError("target is degenerate (nontrivial Mueger center)")


def _pick_strategy(G, strategy, dense_cap):
    size = (G.order - 1) ** 4
    if strategy == "auto":
        return "dense" if size <= dense_cap else "lazy"
    if strategy == "dense" and size > dense_cap:
        raise StrategyError(
            f"dense O4 table needs (|G|-1)^4 = {size} > {dense_cap} entries; "
            "use the lazy evaluator with strategy 'filtration' or 'alt_certificate'")
    if strategy not in ("dense", "lazy"):
        raise ObstructionError(f"unknown strategy {strategy!r}")
    return strategy


def o4_twisted_identity(ac, G, mu, strategy="auto", dense_cap=DENSE_LIMIT):
    """O4 of a 2-cocycle mu2: G x G -> A (trivial star), seven terms:

        c(m12, m34) + w(m34, m12, m12,34) - w(m34, m2,34, m1,234)
        + w(m23, m23,4, m1,234) - w(m23, m1,23, m123,4)
        + w(m12, m12,3, m123,4) - w(m12, m34, m12,34)

    with mXY = mu2(gX, gY), mX,YZ = mu2(gX, gY gZ), etc.  Dense table when
    (|G|-1)^4 <= dense_cap, otherwise a memoized lazy cochain.
    """
    ac = _target_parts(ac)
    _require_nondegenerate(ac)
    if mu.G != G or mu.A != ac.A:
        raise ObstructionError("mu2 does not match the groups")
    if not mu.trivial_star:
        raise ObstructionError("the seven-term formula needs trivial star; use o4_general")
    mu.check()
    w, c, t, mul = ac.omega, ac.c, mu.table, G.mul

    def fn(g1, g2, g3, g4):
        g12, g23, g34 = mul(g1, g2), mul(g2, g3), mul(g3, g4)
        g123, g234 = mul(g12, g3), mul(g2, g34)
        m12, m34, m23 = t[g1][g2], t[g3][g4], t[g2][g3]
        m12_34, m2_34, m1_234 = t[g12][g34], t[g2][g34], t[g1][g234]
        m23_4, m1_23, m123_4, m12_3 = t[g23][g4], t[g1][g23], t[g123][g4], t[g12][g3]
        return (c(m12, m34) + w(m34, m12, m12_34) - w(m34, m2_34, m1_234)
                + w(m23, m23_4, m1_234) - w(m23, m1_23, m123_4)
                + w(m12, m12_3, m123_4) - w(m12, m34, m12_34))

    if _pick_strategy(G, strategy, dense_cap) == "dense":
        return Cochain.from_function(G, QZ_COEFF, 4, fn)
    return LazyCochain(G, QZ_COEFF, 4, fn)


def o4_general(action, mu, literal=False, strategy="auto", dense_cap=DENSE_LIMIT, check=True):
    """O4 of a twisted 2-cocycle for an action (star, mu, gamma), ten terms:

        c(m12, (g1g2)_* m34)
        + w((g1g2)_* m34, m12, m12,34) - w((g1g2)_* m34, (g1)_* m2,34, m1,234)
        + w((g1)_* m23, (g1)_* m23,4, m1,234) - w((g1)_* m23, m1,23, m123,4)
        + w(m12, m12,3, m123,4) - w(m12, (g1g2)_* m34, m12,34)
        + gamma(g1, g2; m34)
        - mu(g1; (g2)_* m34, m2,34) + mu(g1; m23, m23,4)

    ``literal=True`` uses m123,4 instead of m1,234 as the last argument of
    the fourth term; that variant does not reduce to the seven-term form.
    """
    if action.c is None:
        raise ObstructionError("the action's target needs a braiding")
    ac = _target_parts(action.target)
    _require_nondegenerate(ac)
    if check:
        rep = verify_bosonic_action(action)
        if not rep:
            raise ObstructionError(f"action fails its axioms: {rep.to_json()}")
    G = action.G
    if mu.G != G or mu.A != action.A:
        raise ObstructionError("mu2 does not match the action")
    star = action.star
    if mu.star is not None and mu.star != star:
        raise ObstructionError("mu2 is twisted by a different action")
    mu = TwistCocycle(G, action.A, mu.table, star)
    mu.check()
    w, c, t, mul = ac.omega, ac.c, mu.table, G.mul
    psi, phi = action.mu, action.gamma

    def fn(g1, g2, g3, g4):
        g12, g23, g34 = mul(g1, g2), mul(g2, g3), mul(g3, g4)
        g123, g234 = mul(g12, g3), mul(g2, g34)
        m12, m34, m23 = t[g1][g2], t[g3][g4], t[g2][g3]
        m12_34, m2_34, m1_234 = t[g12][g34], t[g2][g34], t[g1][g234]
        m23_4, m1_23, m123_4, m12_3 = t[g23][g4], t[g1][g23], t[g123][g4], t[g12][g3]
        s12_m34 = star[g12][m34]
        s1 = star[g1]
        last4 = m123_4 if literal else m1_234
        return (c(m12, s12_m34)
                + w(s12_m34, m12, m12_34)
                - w(s12_m34, s1[m2_34], m1_234)
                + w(s1[m23], s1[m23_4], last4)
                - w(s1[m23], m1_23, m123_4)
                + w(m12, m12_3, m123_4)
                - w(m12, s12_m34, m12_34)
                + phi[g1][g2][m34]
                - psi[g1][star[g2][m34]][m2_34]
                + psi[g1][m23][m23_4])

    if _pick_strategy(G, strategy, dense_cap) == "dense":
        return Cochain.from_function(G, QZ_COEFF, 4, fn)
    return LazyCochain(G, QZ_COEFF, 4, fn)


def _lower_components_vanish(nf, k):
    s = nf.split
    n = nf.degree
    for p in range(k):
        for at in product(range(1, s.A.order), repeat=p):
            for bt in product(range(1, s.B.order), repeat=n - p):
                if nf.component_value(at, bt) != ZERO:
                    return (p, at, bt)
    return None


def anomaly_verdict(o4, strategy="dense", split=None, k=None, dense_cap=DENSE_LIMIT):
    """Decide (or certify) the class of a Q/Z-valued 4-cocycle.

    ``dense``: triviality_qz on the full table (refused when
    (|G|-1)^4 > dense_cap).  ``filtration``: Lyndon-normalize along
    ``split`` and decide the class of the (k, 4-k) component; a nonzero
    component class proves non-triviality, a zero one is inconclusive.
    ``alt_certificate``: after checking that the (0,4) and (1,3) components
    vanish, evaluate the double alternation of the (2,2) component on
    generator pairs; any nonzero value proves non-triviality.
    """
    G = o4.G
    if o4.degree != 4:
        raise ObstructionError("anomaly_verdict needs a 4-cochain")
    size = (G.order - 1) ** 4
    if strategy == "dense":
        if size > dense_cap:
            raise StrategyError(
                f"dense strategy needs (|G|-1)^4 = {size} > {dense_cap} unknowns; "
                "use strategy 'filtration' (with a split and k) or 'alt_certificate'")
        verdict = triviality_qz(o4.materialize())
        return ObstructionReport(o4 if isinstance(o4, Cochain) else None, verdict.status,
                                 "dense", verdict, dict(verdict.certificate))
    if split is None:
        raise ObstructionError(f"strategy {strategy!r} needs a ProductSplit")
    nf = lyndon_normalize(o4, split)
    if strategy == "filtration":
        if k is None:
            raise ObstructionError("filtration needs k")
        cc = component_class(nf, k)
        status = "nontrivial" if not cc.is_trivial else "inconclusive"
        cert = {"method": "filtration", "k": k, "inner_invariants": cc.inner_invariants,
                "component_class": cc.verdict.status,
                "component_nonzero": cc.cochain is not None and not cc.cochain.is_zero()}
        return ObstructionReport(None, status, "filtration", cc.verdict, cert)
    if strategy == "alt_certificate":
        bad = _lower_components_vanish(nf, 2)
        if bad is not None:
            raise ObstructionError(f"alt certificate needs vanishing (0,4) and (1,3) "
                                   f"components; nonzero at {bad}")
        cert = alt_alt_certificate(nf)
        status = "nontrivial" if cert["nontrivial"] else "inconclusive"
        payload = {"method": "alt_certificate",
                   "values": {"|".join(map(str, key)): v for key, v in cert["nonzero"].items()}}
        return ObstructionReport(None, status, "alt_certificate", payload, payload)
    raise ObstructionError(f"unknown strategy {strategy!r}")


def reproduce_paper(scenario, **params):
    """Run a built-in scenario (drinfeld, odd_m, rank4_actions, d8, z2n,
    cyclic_generators) and return its JSON report."""
    from .scenarios import reproduce_paper as run
    return run(scenario, **params)
