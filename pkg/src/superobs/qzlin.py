"""Exact arithmetic kernel: values in Q/Z and integer linear algebra.

Everything here is exact.  Matrices are plain lists of lists of Python ints;
the Smith normal form uses a fixed pivoting rule (smallest nonzero magnitude,
row-major tie-break) so that every witness built on top of it is reproducible.
"""

from fractions import Fraction
from math import gcd

__all__ = [
    "QZ",
    "qz_add",
    "smith_normal_form",
    "SmithSolver",
    "solve_integer",
    "solve_mod",
    "solve_rational",
    "integer_kernel",
    "invariant_factors",
    "matmul",
    "matvec",
    "identity",
    "determinant",
    "lcm",
]


def lcm(*xs):
    out = 1
    for x in xs:
        if x:
            out = out * abs(x) // gcd(out, x)
    return out


class QZ:
    """An element of Q/Z, stored as a reduced fraction num/den with 0 <= num < den."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if isinstance(num, (QZ,)):
            num, den = num.num, num.den
        elif isinstance(num, Fraction):
            num, den = num.numerator * den, num.denominator
        if den == 0:
            raise ZeroDivisionError("QZ denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    def __setattr__(self, name, value):
        raise AttributeError("QZ is immutable")

    @classmethod
    def coerce(cls, x):
        if isinstance(x, QZ):
            return x
        if isinstance(x, int):
            return ZERO
        if isinstance(x, Fraction):
            return cls(x.numerator, x.denominator)
        if isinstance(x, str):
            return cls(Fraction(x))
        if isinstance(x, dict):
            return cls(int(x["num"]), int(x["den"]))
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return cls(int(x[0]), int(x[1]))
        raise TypeError(f"cannot interpret {x!r} as an element of Q/Z")

    def __add__(self, other):
        if not isinstance(other, QZ):
            if other == 0:
                return self
            return NotImplemented
        if self.den == other.den:
            return QZ(self.num + other.num, self.den)
        return QZ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QZ(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, QZ):
            if other == 0:
                return self
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if other == 0:
            return -self
        return NotImplemented

    def __mul__(self, k):
        if isinstance(k, int):
            return QZ(self.num * k, self.den)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, QZ):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self.num == 0 and other == 0
        if isinstance(other, Fraction):
            return self == QZ.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return self.num != 0

    def __repr__(self):
        return f"QZ({self.num}/{self.den})"

    def __str__(self):
        return "0" if self.num == 0 else f"{self.num}/{self.den}"

    @property
    def order(self):
        """Additive order of the element."""
        return self.den

    def as_fraction(self):
        return Fraction(self.num, self.den)

    def to_json(self):
        return {"num": self.num, "den": self.den}


ZERO = QZ(0, 1)
QZ.ZERO = ZERO


def qz_add(x, y):
    return QZ.coerce(x) + QZ.coerce(y)


# -- matrix helpers ---------------------------------------------------------

def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * cols
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def determinant(M):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


# -- Smith normal form ------------------------------------------------------

class _Reducer:
    """In-place SNF reduction of an integer matrix.

    Row operations are either applied to an explicit U (``track_u=True``) or
    only recorded (``track_u="ops"``) so they can be replayed on right-hand
    sides later; column operations are applied to V and, optionally, to V^-1.
    """

    def __init__(self, M, ncols, track_u=True, track_v=True, track_vinv=False):
        self.D = [list(r) for r in M]
        self.m = len(self.D)
        self.n = ncols
        self.U = identity(self.m) if track_u is True else None
        self.ops = [] if track_u == "ops" else None
        self.V = identity(self.n) if track_v else None
        self.Vinv = identity(self.n) if track_vinv else None

    # row operations -------------------------------------------------------
    def swap_rows(self, i, j):
        D = self.D
        D[i], D[j] = D[j], D[i]
        if self.U is not None:
            self.U[i], self.U[j] = self.U[j], self.U[i]
        if self.ops is not None:
            self.ops.append((0, i, j))

    def add_row(self, src, dst, q, start=0):
        """row[dst] += q * row[src]"""
        rs, rd = self.D[src], self.D[dst]
        for k in range(start, self.n):
            if rs[k]:
                rd[k] += q * rs[k]
        if self.U is not None:
            us, ud = self.U[src], self.U[dst]
            for k in range(self.m):
                if us[k]:
                    ud[k] += q * us[k]
        if self.ops is not None:
            self.ops.append((1, src, dst, q))

    def negate_row(self, i):
        self.D[i] = [-x for x in self.D[i]]
        if self.U is not None:
            self.U[i] = [-x for x in self.U[i]]
        if self.ops is not None:
            self.ops.append((2, i))

    # column operations ----------------------------------------------------
    def swap_cols(self, i, j):
        for row in self.D:
            row[i], row[j] = row[j], row[i]
        if self.V is not None:
            for row in self.V:
                row[i], row[j] = row[j], row[i]
        if self.Vinv is not None:
            W = self.Vinv
            W[i], W[j] = W[j], W[i]

    def add_col(self, src, dst, q, start=0):
        """col[dst] += q * col[src]"""
        for r in range(start, self.m):
            row = self.D[r]
            if row[src]:
                row[dst] += q * row[src]
        if self.V is not None:
            for row in self.V:
                if row[src]:
                    row[dst] += q * row[src]
        if self.Vinv is not None:
            # inverse of the elementary column op is row[src] -= q * row[dst]
            W = self.Vinv
            ws, wd = W[src], W[dst]
            for k in range(self.n):
                if wd[k]:
                    ws[k] -= q * wd[k]

    # reduction ------------------------------------------------------------
    def pivot(self, t):
        best = None
        D = self.D
        for i in range(t, self.m):
            row = D[i]
            for j in range(t, self.n):
                v = row[j]
                if v:
                    a = v if v > 0 else -v
                    if best is None or a < best[0]:
                        best = (a, i, j)
                        if a == 1:
                            return best
        return best

    def run(self):
        t = 0
        limit = min(self.m, self.n)
        while t < limit:
            p = self.pivot(t)
            if p is None:
                break
            _, i, j = p
            if i != t:
                self.swap_rows(i, t)
            if j != t:
                self.swap_cols(j, t)
            while True:
                D = self.D
                a = D[t][t]
                dirty = False
                for i in range(t + 1, self.m):
                    v = D[i][t]
                    if v:
                        self.add_row(t, i, -(v // a), start=t)
                        if D[i][t]:
                            dirty = True
                for j in range(t + 1, self.n):
                    v = D[t][j]
                    if v:
                        self.add_col(t, j, -(v // a), start=t)
                        if D[t][j]:
                            dirty = True
                if not dirty:
                    break
                # a smaller remainder survived in row/column t: re-pivot there
                best = None
                for i in range(t, self.m):
                    v = D[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, t)
                for j in range(t + 1, self.n):
                    v = D[t][j]
                    if v and abs(v) < best[0]:
                        best = (abs(v), t, j)
                _, i, j = best
                if i != t:
                    self.swap_rows(i, t)
                if j != t:
                    self.swap_cols(j, t)
            if self.D[t][t] < 0:
                self.negate_row(t)
            t += 1
        self.rank = t
        self._fix_divisibility()
        return self

    def _fix_divisibility(self):
        D = self.D
        r = self.rank
        changed = True
        while changed:
            changed = False
            for i in range(r):
                for j in range(i + 1, r):
                    a, b = D[i][i], D[j][j]
                    if b % a == 0:
                        continue
                    g, x, y = _xgcd(a, b)
                    self._diag_gcd(i, j, a, b, g, x, y)
                    changed = True

    def _diag_gcd(self, i, j, a, b, g, x, y):
        # rows (i, j) by [[x, y], [-b/g, a/g]] and columns (i, j) by
        # [[1, -y b/g], [1, x a/g]] take diag(a, b) to diag(g, ab/g)
        bg, ag = b // g, a // g
        if self.U is not None:
            ui, uj = self.U[i], self.U[j]
            self.U[i] = [x * p + y * q for p, q in zip(ui, uj)]
            self.U[j] = [-bg * p + ag * q for p, q in zip(ui, uj)]
        if self.ops is not None:
            self.ops.append((3, i, j, x, y, -bg, ag))
        if self.V is not None:
            for row in self.V:
                vi, vj = row[i], row[j]
                row[i] = vi + vj
                row[j] = -y * bg * vi + x * ag * vj
        if self.Vinv is not None:
            # inverse of [[1, -y b/g], [1, x a/g]] (determinant 1) is
            # [[x a/g, y b/g], [-1, 1]], applied to rows (i, j)
            W = self.Vinv
            wi, wj = W[i], W[j]
            W[i] = [x * ag * p + y * bg * q for p, q in zip(wi, wj)]
            W[j] = [-p + q for p, q in zip(wi, wj)]
        self.D[i][i] = g
        self.D[j][j] = a * b // g


def _replay(ops, b):
    """Apply recorded row operations to a vector (returns a new list)."""
    c = list(b)
    for op in ops:
        kind = op[0]
        if kind == 1:
            _, src, dst, q = op
            if c[src]:
                c[dst] += q * c[src]
        elif kind == 0:
            _, i, j = op
            c[i], c[j] = c[j], c[i]
        elif kind == 2:
            c[op[1]] = -c[op[1]]
        else:
            _, i, j, x, y, z, w = op
            ci, cj = c[i], c[j]
            c[i] = x * ci + y * cj
            c[j] = z * ci + w * cj
    return c


def smith_normal_form(M, ncols=None):
    """Return (U, D, V) with U*M*V = D, U and V unimodular, D diagonal with
    d1 | d2 | ... and all d_i >= 0."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    red = _Reducer(M, ncols).run()
    return red.U, red.D, red.V


def invariant_factors(M, ncols=None):
    """Nonzero diagonal entries of the Smith normal form."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    red = _Reducer(M, ncols, track_u=False, track_v=False).run()
    return [red.D[i][i] for i in range(red.rank)]


class SmithSolver:
    """A factored integer matrix; reuse it to solve many right-hand sides.

    With ``U A V = D``, the system ``A x = b`` becomes ``D y = U b`` with
    ``x = V y``.  Only the row operations are stored, not U itself.
    """

    def __init__(self, A, ncols=None, track_vinv=False):
        if ncols is None:
            ncols = len(A[0]) if A else 0
        self.nrows = len(A)
        self.ncols = ncols
        red = _Reducer(A, ncols, track_u="ops", track_vinv=track_vinv).run()
        self._ops = red.ops
        self.V, self.Vinv, self.rank = red.V, red.Vinv, red.rank
        self.diag = [red.D[i][i] for i in range(red.rank)]

    def _check(self, b):
        if len(b) != self.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {self.nrows}")

    def _back(self, y):
        return [sum(v * w for v, w in zip(row, y) if w) for row in self.V]

    def transformed(self, b):
        """U b."""
        self._check(b)
        return _replay(self._ops, b)

    def solve_integer(self, b):
        c = self.transformed(b)
        y = [0] * self.ncols
        for i, d in enumerate(self.diag):
            if c[i] % d:
                return None
            y[i] = c[i] // d
        if any(c[self.rank:]):
            return None
        return self._back(y)

    def solve_mod(self, b, N):
        c = [x % N for x in self.transformed(b)]
        y = [0] * self.ncols
        for i, d in enumerate(self.diag):
            g = gcd(d, N)
            if c[i] % g:
                return None
            Ng = N // g
            if Ng == 1:
                continue
            y[i] = (c[i] // g) * pow(d // g, -1, Ng) % Ng
        if any(c[self.rank:]):
            return None
        return [x % N for x in self._back(y)]

    def solve_rational(self, b):
        c = self.transformed([Fraction(x) for x in b])
        if any(c[self.rank:]):
            return None
        y = [Fraction(0)] * self.ncols
        for i, d in enumerate(self.diag):
            y[i] = c[i] / d
        return self._back(y)

    def obstruction(self, b, N=None):
        """Why ``A x = b`` (over Z, or mod N) has no solution: the first
        transformed row whose residue is not divisible by its pivot."""
        c = self.transformed(b)
        if N is not None:
            c = [x % N for x in c]
        for i, d in enumerate(self.diag):
            m = d if N is None else gcd(d, N)
            if c[i] % m:
                return {"row": i, "pivot": d, "residue": c[i] % m}
        for i in range(self.rank, self.nrows):
            if c[i]:
                return {"row": i, "pivot": 0, "residue": c[i]}
        return None

    def kernel(self):
        """Columns of V spanning the integer kernel, as a list of vectors."""
        return [[row[j] for row in self.V] for j in range(self.rank, self.ncols)]


def solve_integer(A, b):
    """Some integer x with A x = b, or None."""
    ncols = len(A[0]) if A else 0
    if len(A) != len(b):
        raise ValueError("dimension mismatch between A and b")
    return SmithSolver(A, ncols).solve_integer(list(b))


def solve_mod(A, b, N):
    """Some x over Z/N with A x = b (mod N), or None."""
    if N < 1:
        raise ValueError("modulus must be positive")
    if len(A) != len(b):
        raise ValueError("dimension mismatch between A and b")
    ncols = len(A[0]) if A else 0
    return SmithSolver(A, ncols).solve_mod(list(b), N)


def solve_rational(A, b):
    """Some rational x with A x = b, or None."""
    if len(A) != len(b):
        raise ValueError("dimension mismatch between A and b")
    ncols = len(A[0]) if A else 0
    return SmithSolver(A, ncols).solve_rational(list(b))


def integer_kernel(A, ncols=None):
    """A Z-basis of {x in Z^n : A x = 0}."""
    return SmithSolver(A, ncols).kernel()
