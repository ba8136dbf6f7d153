"""Abelian 3-cocycles, quadratic forms and pointed braided data.

All values are additive in Q/Z.  An abelian 3-cocycle on a finite abelian
group A is a pair (omega, c) with omega a normalized 3-cocycle and c a map
A x A -> Q/Z satisfying the two hexagon identities

    c(g, h+k) - c(g, h) - c(g, k) = omega(g,h,k) + omega(h,k,g) - omega(h,g,k)
    c(g+h, k) - c(g, k) - c(h, k) = omega(g,k,h) - omega(g,h,k) - omega(k,g,h).
"""

from dataclasses import dataclass, field
from itertools import product

from .cochain import QZ_COEFF, Cochain, is_cocycle
from .grp import group_from_invariants
from .qzlin import QZ

__all__ = [
    "BraidError",
    "AbelianCocycle",
    "CocycleReport",
    "QuadraticForm",
    "RankFourFamily",
    "check_abelian_cocycle",
    "quadratic_form",
    "bicharacter",
    "mueger_center",
    "is_nondegenerate",
    "rank_four_family",
    "rank_four_all",
    "KLEIN_KS",
    "CYCLIC4_KS",
    "xi_pairing",
    "xi_map",
    "bicharacter_cocycle",
]


class BraidError(ValueError):
    """Invalid or degenerate braided data."""


KLEIN_KS = (QZ(0, 1), QZ(1, 4), QZ(1, 2), QZ(3, 4))
CYCLIC4_KS = (QZ(1, 8), QZ(3, 8), QZ(5, 8), QZ(7, 8))


class AbelianCocycle:
    """A pair (omega, c) on a finite abelian group A.

    ``omega`` is a degree-3 Q/Z cochain on A (or a callable on index triples),
    ``c`` a callable or a nested list ``c[x][y]`` of Q/Z values.
    """

    def __init__(self, A, omega, c):
        if not A.is_abelian:
            raise BraidError("A must be abelian")
        self.A = A
        if not isinstance(omega, Cochain):
            omega = Cochain.from_function(A, QZ_COEFF, 3, omega)
        if omega.G != A or omega.degree != 3 or omega.coeff != QZ_COEFF:
            raise BraidError("omega must be a Q/Z-valued 3-cochain on A")
        self.omega = omega
        n = A.order
        if callable(c):
            table = [[QZ.coerce(c(x, y)) for y in range(n)] for x in range(n)]
        else:
            table = [[QZ.coerce(v) for v in row] for row in c]
        if len(table) != n or any(len(r) != n for r in table):
            raise BraidError("c table has the wrong shape")
        self.c_table = table

    def c(self, x, y):
        return self.c_table[x][y]

    def to_json(self):
        from .serialize import cochain_to_json
        return {
            "group": self.A.to_json(),
            "omega": cochain_to_json(self.omega),
            "c": [[v.to_json() for v in row] for row in self.c_table],
        }


@dataclass
class CocycleReport:
    """Result of :func:`check_abelian_cocycle`; truthy iff everything holds."""

    cocycle_violation: object = None
    hexagon1: list = field(default_factory=list)
    hexagon2: list = field(default_factory=list)

    @property
    def valid(self):
        return self.cocycle_violation is None and not self.hexagon1 and not self.hexagon2

    def __bool__(self):
        return self.valid

    def to_json(self):
        return {
            "valid": self.valid,
            "cocycle_violation": list(self.cocycle_violation) if self.cocycle_violation else None,
            "hexagon1_violations": [list(t) for t in self.hexagon1],
            "hexagon2_violations": [list(t) for t in self.hexagon2],
        }


def check_abelian_cocycle(ac, limit=None):
    """Verify the 3-cocycle condition and both hexagon identities."""
    A, om, c = ac.A, ac.omega, ac.c
    chk = is_cocycle(om)
    rep = CocycleReport(cocycle_violation=chk.violation)
    add = A.mul
    for g, h, k in product(range(A.order), repeat=3):
        lhs = c(g, add(h, k)) - c(g, h) - c(g, k)
        rhs = om(g, h, k) + om(h, k, g) - om(h, g, k)
        if lhs != rhs:
            rep.hexagon1.append((g, h, k))
        lhs = c(add(g, h), k) - c(g, k) - c(h, k)
        rhs = om(g, k, h) - om(g, h, k) - om(k, g, h)
        if lhs != rhs:
            rep.hexagon2.append((g, h, k))
        if limit is not None and len(rep.hexagon1) + len(rep.hexagon2) >= limit:
            break
    return rep


class QuadraticForm:
    """q: A -> Q/Z with its associated symmetric bicharacter b_q."""

    def __init__(self, A, values):
        self.A = A
        self.values = [QZ.coerce(v) for v in values]
        if len(self.values) != A.order:
            raise BraidError("need one value per group element")

    def __call__(self, x):
        return self.values[x]

    def b(self, x, y):
        return self.values[self.A.mul(x, y)] - self.values[x] - self.values[y]

    def violations(self):
        """Failures of q(-l) = q(l) and of bi-additivity of b_q."""
        A = self.A
        out = []
        for x in range(A.order):
            if self.values[A.inv(x)] != self.values[x]:
                out.append(("q(-l) != q(l)", x))
        for x, y, z in product(range(A.order), repeat=3):
            if self.b(A.mul(x, y), z) != self.b(x, z) + self.b(y, z):
                out.append(("b not additive", (x, y, z)))
        return out

    def radical(self):
        A = self.A
        zero = QZ(0)
        return [x for x in range(A.order) if all(self.b(x, y) == zero for y in range(A.order))]


def quadratic_form(ac):
    """q(l) = c(l, l) of a valid abelian 3-cocycle."""
    rep = check_abelian_cocycle(ac, limit=1)
    if not rep:
        raise BraidError("input is not an abelian 3-cocycle")
    return QuadraticForm(ac.A, [ac.c(x, x) for x in range(ac.A.order)])


def bicharacter(ac):
    """The table b_q(x, y) = c(x, y) + c(y, x)."""
    n = ac.A.order
    return [[ac.c(x, y) + ac.c(y, x) for y in range(n)] for x in range(n)]


def mueger_center(ac):
    """The radical of b_q (as a list of element indices)."""
    q = quadratic_form(ac)
    return q.radical()


def is_nondegenerate(ac):
    return mueger_center(ac) == [0]


@dataclass
class RankFourFamily:
    """One of the eight non-degenerate pointed braided data of rank four."""

    variant: str
    k: QZ
    cocycle: AbelianCocycle
    f: int
    v: int
    literal: bool = False

    @property
    def A(self):
        return self.cocycle.A

    @property
    def elements(self):
        """The labels 0, v, f, v+f mapped to element indices."""
        A = self.A
        return {"0": 0, "v": self.v, "f": self.f, "v+f": A.mul(self.v, self.f)}

    def to_json(self):
        return {"variant": self.variant, "k": self.k.to_json(), "literal": self.literal,
                "v": self.v, "f": self.f, "cocycle": self.cocycle.to_json()}


def _variant_name(variant):
    key = str(variant).lower().replace("_", "").replace("-", "")
    if key in ("klein", "kleinfour", "z2xz2", "klein4"):
        return "KleinFour"
    if key in ("cyclic4", "z4", "cyclic"):
        return "Cyclic4"
    raise BraidError(f"unknown variant {variant!r}")


def rank_four_family(variant, k, literal=False):
    """Build (omega_k, c_k) for variant KleinFour (4k = 0) or Cyclic4 (4k = 1/2).

    KleinFour, x = x_v v + x_f f with x_v, x_f in {0, 1}:
        omega_k(x,y,z) = 2k x_v [y_v + z_v >= 2],
        c_k(x,y) = (x_v + x_f) y_f / 2 + k x_v y_v.
    Cyclic4, x = x_v v with x_v in {0..3}, f = 2v:
        omega_k(x,y,z) = (x_v / 2) [y_v + z_v >= 4],  c_k(x,y) = k x_v y_v.
    With ``literal=True`` the Cyclic4 associator is the constant 1/2 on
    [y_v + z_v >= 4]; that table fails the hexagons and is kept for
    comparison only.
    """
    variant = _variant_name(variant)
    k = QZ.coerce(k)
    if variant == "KleinFour":
        if k * 4 != QZ(0):
            raise BraidError(f"KleinFour needs 4k = 0, got k = {k}")
        A = group_from_invariants([2, 2], name="Z/2 x Z/2")
        E = A.elements  # residues (x_v, x_f)

        def omega(x, y, z):
            return k * (2 * E[x][0]) if E[y][0] + E[z][0] >= 2 else QZ(0)

        def c(x, y):
            return QZ((E[x][0] + E[x][1]) * E[y][1], 2) + k * (E[x][0] * E[y][0])

        v, f = A.index((1, 0)), A.index((0, 1))
    else:
        if k * 4 != QZ(1, 2):
            raise BraidError(f"Cyclic4 needs 4k = 1/2, got k = {k}")
        A = group_from_invariants([4], name="Z/4")
        E = A.elements

        if literal:
            def omega(x, y, z):
                return QZ(1, 2) if E[y][0] + E[z][0] >= 4 else QZ(0)
        else:
            def omega(x, y, z):
                return QZ(E[x][0], 2) if E[y][0] + E[z][0] >= 4 else QZ(0)

        def c(x, y):
            return k * (E[x][0] * E[y][0])

        v, f = A.index((1,)), A.index((2,))
    ac = AbelianCocycle(A, omega, c)
    return RankFourFamily(variant, k, ac, f, v, literal=literal)


def rank_four_all(literal=False):
    """All eight families, KleinFour first."""
    return ([rank_four_family("KleinFour", k) for k in KLEIN_KS]
            + [rank_four_family("Cyclic4", k, literal=literal) for k in CYCLIC4_KS])


def xi_map(ac):
    """x -> the character y -> c(y, x) + c(x, y), for non-degenerate data.

    Returns a list of characters (each a list of Q/Z values indexed by A)."""
    if not is_nondegenerate(ac):
        raise BraidError("the pairing needs non-degenerate data")
    n = ac.A.order
    chars = [[ac.c(y, x) + ac.c(x, y) for y in range(n)] for x in range(n)]
    if len({tuple(ch) for ch in chars}) != n:
        raise BraidError("internal error: pairing is not injective")
    return chars


def xi_pairing(ac, x):
    """The character Xi(x) of a non-degenerate abelian 3-cocycle."""
    return xi_map(ac)[x]


def bicharacter_cocycle(A, c):
    """The abelian 3-cocycle (0, c) for a bi-additive c given as a callable."""
    return AbelianCocycle(A, lambda x, y, z: QZ(0), c)
