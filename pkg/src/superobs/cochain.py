"""Normalized bar-resolution cochains and the exact cohomology engine.

A cochain of degree n on G stores one value per n-tuple of non-identity
elements; tuples containing the identity evaluate to zero.  Values live in one
of three coefficient objects:

* :data:`QZ_COEFF` -- Q/Z with trivial action, values :class:`QZ`;
* :data:`INT_COEFF` -- Z with trivial action, values ``int``;
* :class:`ModuleCoeff` -- a finite :class:`GModule`, values module indices.

The coboundary uses the left-action convention

    (df)(g1..g_{n+1}) = g1.f(g2..g_{n+1})
                        + sum_{i=1}^{n} (-1)^i f(.., g_i g_{i+1}, ..)
                        + (-1)^{n+1} f(g1..g_n).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .grp import FinGroup, GModule, GroupError, ModuleHom, ShortExactSeq, cyclic_group
from .qzlin import QZ, SmithSolver, lcm

__all__ = [
    "CochainError",
    "QZ_COEFF",
    "INT_COEFF",
    "ModuleCoeff",
    "Cochain",
    "LazyCochain",
    "tuples",
    "coboundary",
    "coboundary_at",
    "is_cocycle",
    "cocycle_violation",
    "TrivialityVerdict",
    "triviality_qz",
    "triviality_finite",
    "cohomology_invariants",
    "CohomologyLattice",
    "QZCohomology",
    "cup_product",
    "cyclic_u",
    "f_a",
    "cyclic_generator_3",
    "displayed_generator_3",
    "connecting_map",
    "pushforward",
    "in_image_upto_coboundary",
    "cocycle_basis",
]


class CochainError(ValueError):
    """Precondition failures (non-cocycles, mismatched groups, ...)."""


# -- coefficients --------------------------------------------------------------

class _QZCoeff:
    kind = "QZ"
    trivial = True
    zero = QZ(0, 1)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def scale(self, k, x):
        return x * k

    def act(self, g, x):
        return x

    def coerce(self, x):
        return QZ.coerce(x) if not isinstance(x, QZ) else x

    def __repr__(self):
        return "Q/Z"

    def __eq__(self, other):
        return isinstance(other, _QZCoeff)

    def __hash__(self):
        return hash("QZ")

    def to_json(self):
        return "QZ"

    def value_to_json(self, x):
        return x.to_json()

    def value_from_json(self, v):
        return QZ.coerce(v)


class _IntCoeff:
    kind = "Z"
    trivial = True
    zero = 0

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def scale(self, k, x):
        return k * x

    def act(self, g, x):
        return x

    def coerce(self, x):
        return int(x)

    def __repr__(self):
        return "Z"

    def __eq__(self, other):
        return isinstance(other, _IntCoeff)

    def __hash__(self):
        return hash("Z")

    def to_json(self):
        return "Z"

    def value_to_json(self, x):
        return x

    def value_from_json(self, v):
        return int(v)


QZ_COEFF = _QZCoeff()
INT_COEFF = _IntCoeff()


class ModuleCoeff:
    """Coefficients in a finite G-module; values are element indices."""

    kind = "module"
    zero = 0

    def __init__(self, module):
        if not isinstance(module, GModule):
            raise CochainError("ModuleCoeff needs a GModule")
        self.module = module
        self.trivial = module.trivial

    def add(self, x, y):
        return self.module.add(x, y)

    def neg(self, x):
        return self.module.neg(x)

    def sub(self, x, y):
        return self.module.sub(x, y)

    def scale(self, k, x):
        return self.module.scale(k, x)

    def act(self, g, x):
        return self.module.perms[g][x]

    def coerce(self, x):
        if isinstance(x, (tuple, list)):
            return self.module.index(x)
        x = int(x)
        if len(self.module.M.factors) == 1:
            return self.module.index([x])
        if not 0 <= x < self.module.order:
            raise CochainError(f"module element {x} out of range")
        return x

    def __repr__(self):
        return f"ModuleCoeff({self.module!r})"

    def __eq__(self, other):
        return isinstance(other, ModuleCoeff) and self.module == other.module

    def __hash__(self):
        return hash(self.module)

    def to_json(self):
        return self.module.to_json()

    def value_to_json(self, x):
        return list(self.module.residues(x))

    def value_from_json(self, v):
        if isinstance(v, list):
            return self.module.index(v)
        return self.coerce(v)


def as_coeff(c):
    if isinstance(c, GModule):
        return ModuleCoeff(c)
    return c


# -- tuple coding -----------------------------------------------------------------

def tuples(G, n):
    """All n-tuples of non-identity elements, in code order."""
    return product(range(1, G.order), repeat=n)


def _code(tup, base):
    c = 0
    for g in tup:
        c = c * base + (g - 1)
    return c


# -- cochains ---------------------------------------------------------------------

class _Base:
    """Shared evaluation helpers for dense and lazy cochains."""

    def _split_args(self, args):
        if len(args) == 1 and isinstance(args[0], tuple) and self.degree != 1:
            args = args[0]
        if len(args) != self.degree:
            raise CochainError(f"expected {self.degree} arguments, got {len(args)}")
        return args

    @property
    def module(self):
        return self.coeff.module if isinstance(self.coeff, ModuleCoeff) else None


class Cochain(_Base):
    """A normalized n-cochain stored as a dense table over non-identity tuples."""

    def __init__(self, G, coeff, degree, values=None):
        if degree < 0:
            raise CochainError("degree must be non-negative")
        self.G = G
        self.coeff = as_coeff(coeff)
        if isinstance(self.coeff, ModuleCoeff) and self.coeff.module.G != G:
            raise CochainError("module is over a different group")
        self.degree = degree
        self._base = G.order - 1
        size = self._base ** degree
        if values is None:
            self.values = [self.coeff.zero] * size
        elif isinstance(values, dict):
            self.values = [self.coeff.zero] * size
            for tup, v in values.items():
                tup = (tup,) if isinstance(tup, int) else tuple(tup)
                if len(tup) != degree:
                    raise CochainError(f"key {tup} has wrong length")
                if 0 in tup:
                    if v != self.coeff.zero:
                        raise CochainError(f"nonzero value on identity-containing tuple {tup}")
                    continue
                self.values[_code(tup, self._base)] = self.coeff.coerce(v)
        else:
            self.values = list(values)
            if len(self.values) != size:
                raise CochainError(f"expected {size} values, got {len(self.values)}")

    @classmethod
    def from_function(cls, G, coeff, degree, fn):
        coeff = as_coeff(coeff)
        vals = [coeff.coerce(fn(*t)) for t in tuples(G, degree)]
        return cls(G, coeff, degree, vals)

    @classmethod
    def zero(cls, G, coeff, degree):
        return cls(G, coeff, degree)

    def value(self, tup):
        for g in tup:
            if g == 0:
                return self.coeff.zero
        return self.values[_code(tup, self._base)]

    def __call__(self, *args):
        return self.value(self._split_args(args))

    def items(self):
        """(tuple, value) pairs with nonzero value."""
        z = self.coeff.zero
        for t, v in zip(tuples(self.G, self.degree), self.values):
            if v != z:
                yield t, v

    def is_zero(self):
        z = self.coeff.zero
        return all(v == z for v in self.values)

    def _same(self, other):
        if not isinstance(other, Cochain):
            raise CochainError("expected a Cochain")
        if other.G != self.G or other.degree != self.degree or other.coeff != self.coeff:
            raise CochainError("cochains live in different groups")

    def __add__(self, other):
        self._same(other)
        add = self.coeff.add
        return Cochain(self.G, self.coeff, self.degree,
                       [add(a, b) for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._same(other)
        sub = self.coeff.sub
        return Cochain(self.G, self.coeff, self.degree,
                       [sub(a, b) for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return Cochain(self.G, self.coeff, self.degree, [self.coeff.neg(a) for a in self.values])

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return Cochain(self.G, self.coeff, self.degree, [self.coeff.scale(k, a) for a in self.values])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.G == other.G and self.degree == other.degree
                and self.coeff == other.coeff and self.values == other.values)

    __hash__ = None

    def map_values(self, fn, coeff):
        """Apply ``fn`` to every value, landing in ``coeff``."""
        coeff = as_coeff(coeff)
        return Cochain(self.G, coeff, self.degree, [fn(v) for v in self.values])

    def materialize(self):
        return self

    def __repr__(self):
        nz = sum(1 for _ in self.items())
        return f"Cochain(degree={self.degree}, coeff={self.coeff!r}, nonzero={nz})"


class LazyCochain(_Base):
    """A cochain given by a pointwise evaluator (memoized).

    Used when the dense table is too large; evaluation enforces normalization.
    """

    def __init__(self, G, coeff, degree, fn, memo=True, normalized=True):
        self.G = G
        self.coeff = as_coeff(coeff)
        self.degree = degree
        self.normalized = normalized
        self._fn = fn
        self._memo = {} if memo else None

    def value(self, tup):
        tup = tuple(tup)
        if self.normalized:
            for g in tup:
                if g == 0:
                    return self.coeff.zero
        if self._memo is None:
            return self._fn(*tup)
        try:
            return self._memo[tup]
        except KeyError:
            v = self._fn(*tup)
            self._memo[tup] = v
            return v

    def __call__(self, *args):
        return self.value(self._split_args(args))

    def materialize(self):
        if not self.normalized:
            raise CochainError("an unnormalized cochain has no dense normalized table")
        return Cochain(self.G, self.coeff, self.degree,
                       [self.coeff.coerce(self.value(t)) for t in tuples(self.G, self.degree)])

    def __repr__(self):
        return f"LazyCochain(degree={self.degree}, coeff={self.coeff!r})"


# -- coboundary -------------------------------------------------------------------

def coboundary_at(f, gs):
    """(df)(gs) evaluated pointwise; works for dense and lazy cochains."""
    G, C = f.G, f.coeff
    n = f.degree
    if len(gs) != n + 1:
        raise CochainError(f"coboundary of a degree-{n} cochain takes {n + 1} arguments")
    gs = tuple(gs)
    val = C.act(gs[0], f.value(gs[1:]))
    add, sub = C.add, C.sub
    for i in range(n):
        merged = gs[:i] + (G.mul(gs[i], gs[i + 1]),) + gs[i + 2:]
        v = f.value(merged)
        val = sub(val, v) if i % 2 == 0 else add(val, v)
    last = f.value(gs[:n])
    return add(val, last) if n % 2 == 1 else sub(val, last)


def coboundary(f):
    """The coboundary as a dense cochain of degree n+1."""
    if isinstance(f, LazyCochain):
        return LazyCochain(f.G, f.coeff, f.degree + 1, lambda *gs: coboundary_at(f, gs),
                           normalized=f.normalized)
    vals = [coboundary_at(f, t) for t in tuples(f.G, f.degree + 1)]
    return Cochain(f.G, f.coeff, f.degree + 1, vals)


class CocycleCheck:
    """Truthy iff the cochain is a cocycle; ``violation`` is the first tuple
    where the coboundary is nonzero (with ``value`` the coboundary there)."""

    def __init__(self, violation=None, value=None):
        self.violation = violation
        self.value = value

    def __bool__(self):
        return self.violation is None

    def __repr__(self):
        if self.violation is None:
            return "CocycleCheck(ok)"
        return f"CocycleCheck(violation at {self.violation}: {self.value})"


def is_cocycle(f):
    z = f.coeff.zero
    if getattr(f, "normalized", True):
        points = tuples(f.G, f.degree + 1)
    else:
        points = product(range(f.G.order), repeat=f.degree + 1)
    for t in points:
        v = coboundary_at(f, t)
        if v != z:
            return CocycleCheck(t, v)
    return CocycleCheck()


def cocycle_violation(f):
    return is_cocycle(f).violation


def _require_cocycle(f, what="input"):
    chk = is_cocycle(f)
    if not chk:
        raise CochainError(f"{what} is not a cocycle: coboundary is {chk.value} at {chk.violation}")


# -- integer matrices of the coboundary ------------------------------------------

_MATRIX_CACHE = {}
_SOLVER_CACHE = {}


def _module_data(coeff):
    """(rank, moduli, action matrices or None) of a coefficient object."""
    if isinstance(coeff, ModuleCoeff):
        m = coeff.module
        mats = None if m.trivial else m.matrices()
        return len(m.M.factors), list(m.M.factors), mats
    return 1, [0], None


def _coboundary_matrix(G, n, coeff):
    """Integer matrix of d: C^n -> C^{n+1} on residue vectors.

    Rows are (tuple, component) for (n+1)-tuples, columns (tuple, component)
    for n-tuples.  Returned as a list of dense rows.
    """
    key = (G, n, coeff)
    if key in _MATRIX_CACHE:
        return _MATRIX_CACHE[key]
    r, _, mats = _module_data(coeff)
    base = G.order - 1
    ncols = base ** n * r
    rows = []
    for t in tuples(G, n + 1):
        block = [[0] * ncols for _ in range(r)]
        # first term: g1 . f(g2..)
        c = _code(t[1:], base) * r
        if mats is None:
            for i in range(r):
                block[i][c + i] += 1
        else:
            A = mats[t[0]]
            for i in range(r):
                for j in range(r):
                    if A[i][j]:
                        block[i][c + j] += A[i][j]
        for k in range(n):
            prodk = G.mul(t[k], t[k + 1])
            if prodk == 0:
                continue
            merged = t[:k] + (prodk,) + t[k + 2:]
            c = _code(merged, base) * r
            s = -1 if k % 2 == 0 else 1
            for i in range(r):
                block[i][c + i] += s
        if n >= 0:
            c = _code(t[:n], base) * r
            s = 1 if n % 2 == 1 else -1
            for i in range(r):
                block[i][c + i] += s
        rows.extend(block)
    out = (rows, ncols)
    _MATRIX_CACHE[key] = out
    return out


def _solver(G, n, coeff, kind):
    """Cached SNF factorization of the (possibly row-scaled) coboundary matrix.

    kind = "int": the raw integer matrix.  kind = "mod": rows scaled by
    N/d_row to the common modulus N = lcm of the moduli.
    """
    key = (G, n, coeff, kind)
    if key in _SOLVER_CACHE:
        return _SOLVER_CACHE[key]
    rows, ncols = _coboundary_matrix(G, n, coeff)
    if kind == "mod":
        r, moduli, _ = _module_data(coeff)
        N = lcm(*moduli)
        scaled = [[(N // moduli[i % r]) * x for x in row] for i, row in enumerate(rows)]
        sol = SmithSolver(scaled, ncols)
        sol.modulus = N
    else:
        sol = SmithSolver(rows, ncols)
    _SOLVER_CACHE[key] = sol
    return sol


def _vectorize(f):
    """Residue vector of a module-valued cochain."""
    m = f.coeff.module
    out = []
    for v in f.values:
        out.extend(m.residues(v))
    return out


def _devectorize(G, coeff, degree, vec):
    m = coeff.module
    r = len(m.M.factors)
    vals = [m.index(vec[i * r:(i + 1) * r]) for i in range(len(vec) // r)] if r else \
        [0] * ((G.order - 1) ** degree)
    return Cochain(G, coeff, degree, vals)


# -- triviality --------------------------------------------------------------------

@dataclass
class TrivialityVerdict:
    """Outcome of a cohomology-class decision.

    ``witness`` (when trivial) is a cochain p of degree n-1 with dp = f.
    ``certificate`` records how the decision was reached.
    """

    status: str
    witness: object = None
    certificate: dict = field(default_factory=dict)

    @property
    def is_trivial(self):
        return self.status == "trivial"

    def __bool__(self):
        raise TypeError("use .is_trivial to read a TrivialityVerdict")

    def to_json(self):
        out = {"status": self.status, "certificate": self.certificate}
        if self.witness is not None:
            from .serialize import cochain_to_json
            out["witness"] = cochain_to_json(self.witness)
        return out


def triviality_qz(f):
    """Decide whether a Q/Z-valued cocycle is a coboundary (integral Bockstein).

    The lift F = d(f~) of the numerator lift f~ is an integral cocycle; [f] = 0
    iff dP = F is solvable over Z, in which case d q = f~ - P is solvable over
    Q and q mod 1 is the witness.
    """
    if f.coeff != QZ_COEFF:
        raise CochainError("triviality_qz needs Q/Z coefficients with trivial action")
    n = f.degree
    if n < 1:
        raise CochainError("degree must be at least 1")
    f = f.materialize()
    _require_cocycle(f)
    G = f.G
    lift = [v.as_fraction() for v in f.values]
    rows, _ = _coboundary_matrix(G, n, INT_COEFF)
    F = []
    for row in rows:
        s = sum((a * x for a, x in zip(row, lift) if a and x), Fraction(0))
        if s.denominator != 1:
            raise CochainError("lifted coboundary is not integral")
        F.append(int(s))
    solver = _solver(G, n, INT_COEFF, "int")
    nontriv_diag = [d for d in solver.diag if d != 1]
    cert = {
        "method": "integral-bockstein",
        "degree": n,
        "system": [len(rows), (G.order - 1) ** n],
        "snf_diagonal": nontriv_diag,
    }
    P = solver.solve_integer(F)
    if P is None:
        cert["obstruction"] = solver.obstruction(F)
        return TrivialityVerdict("nontrivial", None, cert)
    rhs = [a - b for a, b in zip(lift, P)]
    qsolver = _solver(G, n - 1, INT_COEFF, "int")
    q = qsolver.solve_rational(rhs)
    if q is None:
        raise CochainError("rational solve failed; input is not a torsion cocycle")
    witness = Cochain(G, QZ_COEFF, n - 1, [QZ(x.numerator, x.denominator) for x in q])
    if coboundary(witness) != f:
        raise CochainError("internal error: witness does not re-check")
    return TrivialityVerdict("trivial", witness, cert)


def triviality_finite(f):
    """Decide whether a cocycle with values in a finite G-module is a
    coboundary, by solving dp = f over the module's cyclic factors."""
    if not isinstance(f.coeff, ModuleCoeff):
        raise CochainError("triviality_finite needs finite-module coefficients")
    n = f.degree
    if n < 1:
        raise CochainError("degree must be at least 1")
    f = f.materialize()
    _require_cocycle(f)
    G, coeff = f.G, f.coeff
    r, moduli, _ = _module_data(coeff)
    solver = _solver(G, n - 1, coeff, "mod")
    N = solver.modulus
    b = _vectorize(f)
    b = [(N // moduli[i % r]) * x for i, x in enumerate(b)]
    cert = {
        "method": "modular-solve",
        "degree": n,
        "modulus": N,
        "system": [len(b), solver.ncols],
        "snf_diagonal": [d for d in solver.diag if d % N and d != 1],
    }
    x = solver.solve_mod(b, N)
    if x is None:
        cert["obstruction"] = solver.obstruction(b, N)
        return TrivialityVerdict("nontrivial", None, cert)
    witness = _devectorize(G, coeff, n - 1, x)
    if coboundary(witness) != f:
        raise CochainError("internal error: witness does not re-check")
    return TrivialityVerdict("trivial", witness, cert)


def is_coboundary(f):
    """Convenience dispatch on the coefficient type."""
    if f.coeff == QZ_COEFF:
        return triviality_qz(f)
    return triviality_finite(f)


# -- cohomology groups ---------------------------------------------------------------

class CohomologyLattice:
    """H^n(G, M) for a finite module M, as a quotient of integer lattices.

    Cochains are lifted to residue vectors in Z^c.  The lifted cocycles form
    K = {x : d x = 0 mod moduli}; the coboundaries together with the module
    relations form S.  With K = Kb Z^c and S = Kb Y, H^n = Z^c / Y Z^s and the
    SNF of Y gives invariant factors and class coordinates.
    """

    def __init__(self, module, n):
        if n < 0:
            raise CochainError("degree must be non-negative")
        coeff = as_coeff(module)
        self.coeff = coeff
        self.module = coeff.module
        G = self.module.G
        self.G = G
        self.n = n
        r, moduli, _ = _module_data(coeff)
        self.r = r
        c = (G.order - 1) ** n * r
        self.c = c
        self.col_moduli = [moduli[i % r] for i in range(c)]
        # cocycle lattice K
        if c == 0:
            self.invariants = []
            return
        rows, _ = _coboundary_matrix(G, n, coeff)
        N = lcm(*moduli)
        scaled = [[(N // moduli[i % r]) * x for x in row] for i, row in enumerate(rows)]
        sol = SmithSolver(scaled, c, track_vinv=True) if scaled else None
        e = []
        for i in range(c):
            if sol is not None and i < sol.rank:
                d = sol.diag[i]
                e.append(N // _gcd(N, d))
            else:
                e.append(1)
        if sol is None:
            V = [[int(i == j) for j in range(c)] for i in range(c)]
            Vinv = V
        else:
            V, Vinv = sol.V, sol.Vinv
        self._e = e
        self._V = V
        self._Vinv = Vinv
        # S generators: coboundaries and relations
        S = []
        if n >= 1:
            prow, pcols = _coboundary_matrix(G, n - 1, coeff)
            for j in range(pcols):
                S.append([prow[i][j] for i in range(c)])
        for i in range(c):
            col = [0] * c
            col[i] = self.col_moduli[i]
            S.append(col)
        Y = []
        for col in S:
            y = self._coords_in_K(col)
            if y is None:
                raise CochainError("internal error: coboundary not in cocycle lattice")
            Y.append(y)
        Ymat = [[Y[j][i] for j in range(len(Y))] for i in range(c)]
        self._ysolver = SmithSolver(Ymat, len(Y))
        diag = self._ysolver.diag
        if self._ysolver.rank < c:
            raise CochainError("internal error: cohomology has a free part")
        self._diag = diag
        self.invariants = [d for d in diag if d != 1]

    def _coords_in_K(self, x):
        w = [sum(a * b for a, b in zip(row, x) if a and b) for row in self._Vinv]
        out = []
        for wi, ei in zip(w, self._e):
            if wi % ei:
                return None
            out.append(wi // ei)
        return out

    @property
    def order(self):
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def coordinates(self, f):
        """Class of a cocycle f as residues modulo the invariant factors."""
        if self.c == 0:
            return []
        x = _vectorize(f.materialize())
        y = self._coords_in_K(x)
        if y is None:
            raise CochainError("not a cocycle")
        t = self._ysolver.transformed(y)
        return [t[i] % d for i, d in enumerate(self._diag) if d != 1]

    def cocycle_generators(self):
        """Residue vectors generating the lifted cocycle lattice."""
        cols = []
        for j in range(self.c):
            cols.append([self._V[i][j] * self._e[j] for i in range(self.c)])
        return cols


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def cohomology_invariants(G, M, n):
    """Invariant factors of H^n(G, M) for a finite G-module M (order-1 factors
    dropped; an empty list means the group is trivial)."""
    if n < 1:
        raise CochainError("degree must be at least 1")
    if isinstance(M, FinGroup):
        M = GModule.trivial_module(G, M)
    if M.G != G:
        raise CochainError("module is over a different group")
    return CohomologyLattice(M, n).invariants


def cocycle_basis(module, n):
    """Cocycles generating Z^n(G, M) (as cochains)."""
    lat = CohomologyLattice(module, n)
    coeff = lat.coeff
    return [_devectorize(lat.G, coeff, n, [x % m for x, m in zip(col, lat.col_moduli)])
            for col in lat.cocycle_generators()]


class QZCohomology:
    """H^q(G, Q/Z) = H^{q+1}(G, Z) with explicit class coordinates.

    For a cocycle f the coordinates are (U d f~)_i mod d_i over the
    nontrivial SNF pivots d_i of the integral coboundary d: C^q -> C^{q+1}.
    """

    def __init__(self, G, q):
        self.G = G
        self.q = q
        self._solver = _solver(G, q, INT_COEFF, "int")
        self.invariants = [d for d in self._solver.diag if d != 1]

    def coordinates(self, f):
        if f.degree != self.q or f.G != self.G:
            raise CochainError("cochain does not match")
        if self.q == 0:
            # H^0(G, Q/Z) = Q/Z itself; no finite coordinates
            raise CochainError("degree-0 classes are values, not finite coordinates")
        lift = [v.as_fraction() for v in f.materialize().values]
        rows, _ = _coboundary_matrix(self.G, self.q, INT_COEFF)
        F = []
        for row in rows:
            s = sum((a * x for a, x in zip(row, lift) if a and x), Fraction(0))
            if s.denominator != 1:
                raise CochainError("not a cocycle")
            F.append(int(s))
        c = self._solver.transformed(F)
        if any(c[self._solver.rank:]):
            raise CochainError("not a cocycle")
        return [c[i] % d for i, d in enumerate(self._solver.diag) if d != 1]


# -- cup products and cyclic generators -------------------------------------------

def cup_product(f, g):
    """(f u g)(x1..xp, y1..yq) = f(x1..xp) * g(y1..yq) for an integer-valued g."""
    if f.G != g.G:
        raise CochainError("cup product of cochains on different groups")
    if g.coeff != INT_COEFF:
        raise CochainError("the second factor must be integer-valued")
    p, q = f.degree, g.degree
    C = f.coeff

    def val(*t):
        a = f.value(t[:p])
        b = g.value(t[p:])
        return C.scale(b, a)

    return Cochain.from_function(f.G, C, p + q, val)


def cyclic_u(m):
    """The integer 2-cocycle u(x, y) = [x + y >= m] on Z/m."""
    G = cyclic_group(m)
    return Cochain.from_function(G, INT_COEFF, 2, lambda x, y: int(x + y >= m))


def f_a(G, coeff, a):
    """The 1-cochain sigma^i -> a + sigma.a + ... + sigma^{i-1}.a on a cyclic
    group with generator index 1 (requires N a = 0)."""
    coeff = as_coeff(coeff)
    a = coeff.coerce(a)
    m = G.order
    acc, sigma = coeff.zero, G.generator(0) if G.factors else 1
    partial = [coeff.zero]
    g = 0
    for _ in range(m):
        acc = coeff.add(acc, coeff.act(g, a))
        partial.append(acc)
        g = G.mul(g, sigma)
    if partial[m] != coeff.zero:
        raise CochainError("f_a needs N a = 0")
    return Cochain.from_function(G, coeff, 1, lambda x: partial[G.elements[x][0]])


def cyclic_generator_3(m):
    """Generator of H^3(Z/m, Q/Z): f_a u u with a = 1/m, i.e.
    (sigma^i, sigma^j, sigma^k) -> (i/m) [j + k >= m]."""
    if m < 2:
        raise CochainError("m must be at least 2")
    G = cyclic_group(m)
    return cup_product(f_a(G, QZ_COEFF, QZ(1, m)), cyclic_u(m))


def displayed_generator_3(m):
    """The 3-cochain (i, j, k) -> (1/m) [j + k >= m], first argument ignored
    (so it is nonzero at (e, s^j, s^k) and hence not normalized).

    Kept to document that this form is not a cocycle."""
    if m < 2:
        raise CochainError("m must be at least 2")
    G = cyclic_group(m)
    return LazyCochain(G, QZ_COEFF, 3,
                       lambda i, j, k: QZ(1, m) if j + k >= m else QZ(0),
                       normalized=False)


# -- maps between coefficient modules ---------------------------------------------

def connecting_map(ses, f):
    """d(f) = i^{-1}(d(s o f)) for a C-valued cocycle f."""
    if not isinstance(ses, ShortExactSeq):
        raise CochainError("expected a ShortExactSeq")
    if f.coeff != ModuleCoeff(ses.C):
        raise CochainError("cochain does not take values in the quotient module")
    f = f.materialize()
    _require_cocycle(f)
    lifted = f.map_values(lambda c: ses.s[c], ses.B)
    d = coboundary(lifted)
    try:
        return d.map_values(ses.i_inverse, ses.A)
    except GroupError as exc:
        raise CochainError(f"broken short exact sequence: {exc}") from None


def pushforward(r, f):
    """Apply a module homomorphism valuewise."""
    if not isinstance(r, ModuleHom):
        raise CochainError("expected a ModuleHom")
    if f.coeff != ModuleCoeff(r.src):
        raise CochainError("cochain does not take values in the source module")
    if r.violations(limit=1):
        raise CochainError("r is not an equivariant homomorphism")
    return f.materialize().map_values(r, r.dst)


_IMAGE_CACHE = {}


def _image_system(r, G, n):
    """Cached SNF of the system {d tau = 0, r(tau) - d q = .} for
    :func:`in_image_upto_coboundary`; only the right-hand side varies."""
    key = (r.src, r.dst, tuple(r.images), G, n)
    if key in _IMAGE_CACHE:
        return _IMAGE_CACHE[key]
    cM, cP = ModuleCoeff(r.src), ModuleCoeff(r.dst)
    rM, modM, _ = _module_data(cM)
    rP, modP, _ = _module_data(cP)
    N = lcm(*(modM + modP))
    base = G.order - 1
    nt = base ** n * rM          # tau unknowns
    nq = base ** (n - 1) * rP if n >= 1 else 0
    ncols = nt + nq
    rows = []
    # d tau = 0 over M
    drows, _ = _coboundary_matrix(G, n, cM)
    for i, row in enumerate(drows):
        s = N // modM[i % rM]
        rows.append([s * x for x in row] + [0] * nq)
    n_drows = len(rows)
    # r(tau) - d q = target over M'
    R = r.matrix()
    qrows = _coboundary_matrix(G, n - 1, cP)[0] if n >= 1 else None
    for t in range(base ** n):
        for i in range(rP):
            s = N // modP[i]
            row = [0] * ncols
            for j in range(rM):
                if R[i][j]:
                    row[t * rM + j] = s * R[i][j]
            if qrows is not None:
                qr = qrows[t * rP + i]
                for j, x in enumerate(qr):
                    if x:
                        row[nt + j] = -s * x
            rows.append(row)
    out = (SmithSolver(rows, ncols), nt, nq, N, n_drows)
    _IMAGE_CACHE[key] = out
    return out


def in_image_upto_coboundary(r, target):
    """Find a cocycle tau over r.src with r(tau) cohomologous to target.

    Solves d tau = 0 and r(tau) - d q = target as one system over the cyclic
    factors of both modules.  Returns ``(tau, q)`` or None.
    """
    if target.coeff != ModuleCoeff(r.dst):
        raise CochainError("target does not take values in r's codomain")
    target = target.materialize()
    _require_cocycle(target, "target")
    G = target.G
    n = target.degree
    cM, cP = ModuleCoeff(r.src), ModuleCoeff(r.dst)
    solver, nt, nq, N, n_drows = _image_system(r, G, n)
    rM, modM, _ = _module_data(cM)
    rP, modP, _ = _module_data(cP)
    tvec = _vectorize(target)
    rhs = [0] * n_drows + [(N // modP[j % rP]) * v for j, v in enumerate(tvec)]
    x = solver.solve_mod(rhs, N)
    if x is None:
        return None
    tau = _devectorize(G, cM, n, [v % m for v, m in zip(x[:nt], [modM[i % rM] for i in range(nt)])])
    q = (_devectorize(G, cP, n - 1, [v % m for v, m in zip(x[nt:], [modP[i % rP] for i in range(nq)])])
         if n >= 1 else None)
    if not is_cocycle(tau):
        raise CochainError("internal error: preimage is not a cocycle")
    if pushforward(r, tau) - coboundary(q) != target:
        raise CochainError("internal error: preimage does not re-check")
    return tau, q
