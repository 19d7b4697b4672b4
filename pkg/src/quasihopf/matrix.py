"""Dense exact linear algebra over Q and F_p.

Everything downstream (axiom checks, Hom spaces, quotients, operator
invertibility) reduces to the handful of kernels here: rref, nullspace,
affine solve, quotients, Kronecker products.  Matrices are dense row-major
lists; inner loops skip zero entries, which matters because structure
constants in this domain are mostly zeros.

Global index convention: the basis vector e_{i1} (x) ... (x) e_{ik} of a
tensor power has flat index ((i1*n + i2)*n + ...)*n + ik, 0-based; kron is
consistent with it (first factor most significant).
"""

class Mat:
    """Immutable-by-convention dense matrix over an exact field."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows, cols, data):
        assert len(data) == rows and all(len(r) == cols for r in data)
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        data = [[o if i == j else z for j in range(n)] for i in range(n)]
        return cls(field, n, n, data)

    @classmethod
    def from_rows(cls, field, rows):
        rows = [[field(x) for x in r] for r in rows]
        nc = len(rows[0]) if rows else 0
        return cls(field, len(rows), nc, rows)

    @classmethod
    def col_vector(cls, field, entries):
        return cls(field, len(entries), 1, [[field(x)] for x in entries])

    def entry(self, i, j):
        return self.data[i][j]

    def row(self, i):
        return list(self.data[i])

    def col(self, j):
        return [r[j] for r in self.data]

    def copy(self):
        return Mat(self.field, self.rows, self.cols, [list(r) for r in self.data])

    def transpose(self):
        data = [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return Mat(self.field, self.cols, self.rows, data)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            self.data == other.data

    def __hash__(self):
        raise TypeError("Mat is not hashable")

    def is_zero(self):
        for r in self.data:
            if any(r):
                return False
        return True

    def __add__(self, other):
        assert (self.rows, self.cols) == (other.rows, other.cols)
        red = self.field.reduce_row
        data = [red([a + b for a, b in zip(ra, rb)])
                for ra, rb in zip(self.data, other.data)]
        return Mat(self.field, self.rows, self.cols, data)

    def __sub__(self, other):
        assert (self.rows, self.cols) == (other.rows, other.cols)
        red = self.field.reduce_row
        data = [red([a - b for a, b in zip(ra, rb)])
                for ra, rb in zip(self.data, other.data)]
        return Mat(self.field, self.rows, self.cols, data)

    def __neg__(self):
        red = self.field.reduce_row
        return Mat(self.field, self.rows, self.cols,
                   [red([-a for a in r]) for r in self.data])

    def scale(self, c):
        c = self.field(c)
        red = self.field.reduce_row
        return Mat(self.field, self.rows, self.cols,
                   [red([c * a for a in r]) for r in self.data])

    def __mul__(self, other):
        if not isinstance(other, Mat):
            return self.scale(other)
        assert self.cols == other.rows, (self.cols, other.rows)
        field = self.field
        z = field.zero
        red = field.reduce_row
        bc = other.cols
        bdata = other.data
        bnz = {}
        out = []
        for arow in self.data:
            crow = [z] * bc
            for k, a in enumerate(arow):
                if a:
                    rowk = bnz.get(k)
                    if rowk is None:
                        rowk = bnz[k] = [(j, b) for j, b in
                                         enumerate(bdata[k]) if b]
                    for j, b in rowk:
                        crow[j] = crow[j] + a * b
            out.append(red(crow))
        return Mat(field, self.rows, bc, out)

    def matvec(self, v):
        """Apply to a column coordinate vector (a plain list)."""
        assert len(v) == self.cols
        field = self.field
        z = field.zero
        red = field.reduce
        out = []
        for arow in self.data:
            s = z
            for a, x in zip(arow, v):
                if a and x:
                    s = s + a * x
            out.append(red(s))
        return out

    def hstack(self, other):
        assert self.rows == other.rows
        data = [ra + rb for ra, rb in zip(self.data, other.data)]
        return Mat(self.field, self.rows, self.cols + other.cols, data)

    def vstack(self, other):
        assert self.cols == other.cols
        return Mat(self.field, self.rows + other.rows, self.cols,
                   [list(r) for r in self.data] + [list(r) for r in other.data])

    def __repr__(self):
        fmt = self.field.fmt
        body = "; ".join(" ".join(fmt(x) for x in r) for r in self.data)
        return "Mat(%dx%d over %r: %s)" % (self.rows, self.cols, self.field, body)


def kron(a, b):
    """Kronecker product, first factor most significant."""
    assert a.field == b.field
    field = a.field
    z = field.zero
    red = field.reduce_row
    br, bc = b.rows, b.cols
    out = [[z] * (a.cols * bc) for _ in range(a.rows * br)]
    for i in range(a.rows):
        arow = a.data[i]
        for j, av in enumerate(arow):
            if av:
                for k in range(br):
                    orow = out[i * br + k]
                    brow = b.data[k]
                    base = j * bc
                    for l, bv in enumerate(brow):
                        if bv:
                            orow[base + l] = av * bv
    return Mat(field, a.rows * br, a.cols * bc, [red(r) for r in out])


def rref(m):
    """Reduced row-echelon form.

    Returns (R, pivots, rank) with pivots a tuple of pivot column indices.
    Deterministic: pivot search top-to-bottom, columns left-to-right.
    """
    field = m.field
    red = field.reduce_row
    inv = field.inv
    rows, cols = m.rows, m.cols
    data = [list(r) for r in m.data]
    pivots = []
    pr = 0
    for pc in range(cols):
        if pr >= rows:
            break
        pivot_row = -1
        for i in range(pr, rows):
            if data[i][pc]:
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        if pivot_row != pr:
            data[pr], data[pivot_row] = data[pivot_row], data[pr]
        prow = data[pr]
        pv = prow[pc]
        if pv != field.one:
            f = inv(pv)
            data[pr] = prow = red([f * x for x in prow])
        for i in range(pr + 1, rows):
            ri = data[i]
            f = ri[pc]
            if f:
                for j in range(pc, cols):
                    pj = prow[j]
                    if pj:
                        ri[j] = ri[j] - f * pj
                data[i] = red(ri)
        pivots.append(pc)
        pr += 1
    # back-substitution to clear above the pivots
    for k in range(len(pivots) - 1, -1, -1):
        pc = pivots[k]
        prow = data[k]
        for i in range(k):
            ri = data[i]
            f = ri[pc]
            if f:
                for j in range(pc, cols):
                    pj = prow[j]
                    if pj:
                        ri[j] = ri[j] - f * pj
                data[i] = red(ri)
    return Mat(field, rows, cols, data), tuple(pivots), len(pivots)


def rank(m):
    return rref(m)[2]


class Subspace:
    """A subspace of k^ambient_dim with a canonical (column-echelon) basis.

    Canonical means: basis columns are the rref rows of the transposed
    generators, so two subspaces are equal iff their basis matrices are
    entry-wise equal.
    """

    __slots__ = ("ambient_dim", "basis", "dim", "_pivots")

    def __init__(self, ambient_dim, basis, pivots):
        self.ambient_dim = ambient_dim
        self.basis = basis          # ambient_dim x dim, canonical
        self.dim = basis.cols
        self._pivots = pivots       # pivot coordinate of each basis column

    @classmethod
    def from_columns(cls, field, ambient_dim, columns):
        """Span of the given vectors (plain lists), canonicalized."""
        if not columns:
            return cls(ambient_dim, Mat.zeros(field, ambient_dim, 0), ())
        gen = Mat(field, len(columns), ambient_dim, [list(c) for c in columns])
        r, pivots, rk = rref(gen)
        cols = [[r.data[i][j] for i in range(rk)] for j in range(ambient_dim)]
        return cls(ambient_dim, Mat(field, ambient_dim, rk, cols), pivots)

    @classmethod
    def zero(cls, field, ambient_dim):
        return cls.from_columns(field, ambient_dim, [])

    @classmethod
    def full(cls, field, ambient_dim):
        return cls(ambient_dim, Mat.identity(field, ambient_dim),
                   tuple(range(ambient_dim)))

    def reduce_vector(self, v):
        """Subtract the basis components of v; the result has zeros at all
        pivot coordinates and is unchanged modulo the subspace."""
        field = self.basis.field
        v = list(v)
        for j, pc in enumerate(self._pivots):
            f = v[pc]
            if f:
                bcol = self.basis.data
                for i in range(self.ambient_dim):
                    bij = bcol[i][j]
                    if bij:
                        v[i] = v[i] - f * bij
                v = field.reduce_row(v)
        return v

    def contains(self, v):
        return not any(self.reduce_vector(v))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __repr__(self):
        return "Subspace(dim %d of k^%d)" % (self.dim, self.ambient_dim)


def nullspace(m):
    """Canonical basis of {x : m x = 0} as a Subspace of k^cols."""
    field = m.field
    r, pivots, rk = rref(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    cols = []
    z, o = field.zero, field.one
    for fc in free:
        v = [z] * m.cols
        v[fc] = o
        for i, pc in enumerate(pivots):
            c = r.data[i][fc]
            if c:
                v[pc] = field.reduce(-c)
        cols.append(v)
    return Subspace.from_columns(field, m.cols, cols)


class NoSolution:
    """Marker result: the affine system m x = b is infeasible."""

    def __repr__(self):
        return "NoSolution"


class Solution:
    """A particular solution plus the homogeneous solution subspace."""

    __slots__ = ("x0", "homogeneous")

    def __init__(self, x0, homogeneous):
        self.x0 = x0
        self.homogeneous = homogeneous

    def __repr__(self):
        return "Solution(x0=%r, homogeneous=%r)" % (self.x0, self.homogeneous)


def solve_affine(m, b):
    """Solve m x = b exactly; returns Solution(x0, homogeneous) or NoSolution."""
    assert len(b) == m.rows
    field = m.field
    aug = Mat(field, m.rows, m.cols + 1,
              [row + [field(v)] for row, v in zip(m.data, b)])
    r, pivots, rk = rref(aug)
    if m.cols in pivots:
        return NoSolution()
    z = field.zero
    x0 = [z] * m.cols
    for i, pc in enumerate(pivots):
        x0[pc] = r.data[i][m.cols]
    return Solution(x0, nullspace(m))


class QuotientData:
    """proj: ambient -> quotient (kernel = killed) and a section of it."""

    __slots__ = ("proj", "section", "killed")

    def __init__(self, proj, section, killed):
        self.proj = proj
        self.section = section
        self.killed = killed

    @property
    def dim(self):
        return self.proj.rows


def quotient(field, ambient_dim, killed, last=False):
    """Quotient of k^ambient_dim by a canonical subspace.

    The quotient coordinates are the non-pivot coordinates of `killed`;
    with last=True the pivoting scans coordinates in reverse, giving an
    independent second choice of section for cross-checks.
    """
    assert killed.ambient_dim == ambient_dim
    if not last:
        sub = killed
        order = list(range(ambient_dim))
    else:
        order = list(range(ambient_dim - 1, -1, -1))
        perm_cols = [[c[i] for i in order] for c in
                     (killed.basis.col(j) for j in range(killed.dim))]
        sub = Subspace.from_columns(field, ambient_dim, perm_cols)
    pivset = set(sub._pivots)
    compl = [j for j in range(ambient_dim) if j not in pivset]
    q = len(compl)
    z, o = field.zero, field.one
    proj_rows = [[z] * ambient_dim for _ in range(q)]
    for qi, cj in enumerate(compl):
        proj_rows[qi][cj] = o
    for bi, pc in enumerate(sub._pivots):
        bcol = sub.basis.col(bi)
        for qi, cj in enumerate(compl):
            if bcol[cj]:
                proj_rows[qi][pc] = field.reduce(-bcol[cj])
    proj = Mat(field, q, ambient_dim, [field.reduce_row(r) for r in proj_rows])
    sec_rows = [[z] * q for _ in range(ambient_dim)]
    for qi, cj in enumerate(compl):
        sec_rows[cj][qi] = o
    section = Mat(field, ambient_dim, q, sec_rows)
    if last:
        # translate back from the reversed coordinate ordering
        unperm = Mat.zeros(field, ambient_dim, ambient_dim)
        for i, j in enumerate(order):
            unperm.data[i][j] = o
        proj = proj * unperm
        section = unperm.transpose() * section
    return QuotientData(proj, section, killed)


def inverse(m):
    """Exact inverse, or None if m is not square of full rank."""
    if m.rows != m.cols:
        return None
    field = m.field
    aug = m.hstack(Mat.identity(field, m.rows))
    r, pivots, rk = rref(aug)
    if rk < m.rows or any(p >= m.cols for p in pivots[:rk]) or \
            list(pivots[:m.rows]) != list(range(m.rows)):
        return None
    data = [row[m.cols:] for row in r.data[:m.rows]]
    return Mat(field, m.rows, m.cols, data)


def is_invertible(m):
    return m.rows == m.cols and rank(m) == m.rows

