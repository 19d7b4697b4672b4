"""Quasi-bialgebras by structure constants, with axiom and antipode checking.

Conventions used throughout the package:

  * mult[i][j][k]:   e_i e_j = sum_k mult[i][j][k] e_k
  * comul[i][j][k]:  Delta(e_i) = sum_{j,k} comul[i][j][k] e_j (x) e_k
  * the associator Phi and its inverse are flat n^3 vectors in the global
    index convention;
  * iterated comultiplication is bracketed as (Delta (x) id) o Delta, and
    every formula carries its associator insertions explicitly, so no
    silent rebracketing happens anywhere.

Sweedler-style sums are computed with the sparse-element helpers from
`tensorops`; a_1 (x) a_2 means looping over comul_pairs[a].
"""

from .matrix import Mat, NoSolution, solve_affine
from . import tensorops as T


class ShapeMismatch(ValueError):
    pass


class VerificationCheck:
    __slots__ = ("name", "passed", "detail", "skipped")

    def __init__(self, name, passed, detail="", skipped=False):
        self.name = name
        self.passed = bool(passed) or bool(skipped)
        self.detail = detail
        self.skipped = bool(skipped)

    @classmethod
    def skip(cls, name, reason):
        return cls(name, True, reason, skipped=True)

    def status(self):
        if self.skipped:
            return "skipped(%s)" % self.detail
        return "pass" if self.passed else "fail"

    def __repr__(self):
        return "%s: %s" % (self.name, self.status())


class VerificationReport:
    def __init__(self, checks):
        self.checks = list(checks)

    @property
    def all_pass(self):
        return all(c.passed for c in self.checks)

    def failing(self):
        return [c.name for c in self.checks if not c.passed]

    def as_dict(self):
        return {c.name: c.status() for c in self.checks}

    def __repr__(self):
        return "VerificationReport(%s)" % ", ".join(map(repr, self.checks))


class QuasiBialgebra:
    """A finite-dimensional quasi-bialgebra given by exact structure constants."""

    def __init__(self, field, n, mult, unit, comul, counit, phi, phi_inv,
                 name="", basis_labels=None):
        if n <= 0:
            raise ShapeMismatch("dimension must be positive, got %d" % n)
        self.field = field
        self.n = n
        self.name = name
        self.basis_labels = list(basis_labels) if basis_labels else \
            ["e%d" % i for i in range(n)]
        _assert_cube(mult, n, "mult")
        _assert_cube(comul, n, "comul")
        for name_, v, ln in (("unit", unit, n), ("counit", counit, n),
                             ("phi", phi, n ** 3), ("phi_inv", phi_inv, n ** 3)):
            if len(v) != ln:
                raise ShapeMismatch("%s has length %d, expected %d"
                                    % (name_, len(v), ln))
        f = field
        self.mult = [[[f(x) for x in row] for row in plane] for plane in mult]
        self.comul = [[[f(x) for x in row] for row in plane] for plane in comul]
        self.unit = [f(x) for x in unit]
        self.counit = [f(x) for x in counit]
        self.phi = [f(x) for x in phi]
        self.phi_inv = [f(x) for x in phi_inv]
        self._build_tables()

    def _build_tables(self):
        n = self.n
        self.mult_pairs = [[[(k, c) for k, c in enumerate(self.mult[i][j]) if c]
                            for j in range(n)] for i in range(n)]
        self.comul_pairs = [[(j, k, self.comul[i][j][k])
                             for j in range(n) for k in range(n)
                             if self.comul[i][j][k]] for i in range(n)]
        self.phi_elem = T.flat_to_elem(self.phi, (n, n, n))
        self.phi_inv_elem = T.flat_to_elem(self.phi_inv, (n, n, n))
        self.unit_elem = T.vec_to_elem(self.unit)
        self.lmul = [self.left_mult_mat(self.basis_elem(a)) for a in range(n)]
        self.rmul = [self.right_mult_mat(self.basis_elem(a)) for a in range(n)]
        nz = [(i, c) for i, c in enumerate(self.unit) if c]
        self.unit_index = nz[0][0] if len(nz) == 1 and \
            nz[0][1] == self.field.one else None

    # ---- element arithmetic (sparse dicts over basis index tuples) ----

    def basis_elem(self, i):
        return {(i,): self.field.one}

    def mul(self, x, y):
        """Product of two elements of the same tensor power A^(x)k."""
        out = {}
        pairs = self.mult_pairs
        for kx, cx in x.items():
            for ky, cy in y.items():
                terms = [((), cx * cy)]
                for a, b in zip(kx, ky):
                    terms = [(key + (k,), c * ck)
                             for key, c in terms for k, ck in pairs[a][b]]
                for key, c in terms:
                    T.add_into(out, key, c)
        return T.normalize(self.field, out)

    def mul_many(self, *elems):
        out = elems[0]
        for e in elems[1:]:
            out = self.mul(out, e)
        return out

    def delta_leg(self, x, pos):
        """Apply Delta to tensor factor `pos`, yielding one more leg."""
        out = {}
        for key, c in x.items():
            for j, k, cc in self.comul_pairs[key[pos]]:
                T.add_into(out, key[:pos] + (j, k) + key[pos + 1:], c * cc)
        return T.normalize(self.field, out)

    def eps_leg(self, x, pos):
        """Apply the counit to tensor factor `pos`, dropping it."""
        out = {}
        eps = self.counit
        for key, c in x.items():
            e = eps[key[pos]]
            if e:
                T.add_into(out, key[:pos] + key[pos + 1:], c * e)
        return T.normalize(self.field, out)

    def unit_power(self, k):
        out = {(): self.field.one}
        for _ in range(k):
            out = T.tensor(out, self.unit_elem)
        return out

    def comul_k(self, x, k):
        """Iterated comultiplication of x in A, bracketed (Delta (x) id) o Delta."""
        assert k >= 1
        out = dict(x)
        for _ in range(k - 1):
            out = self.delta_leg(out, 0)
        return out

    # ---- matrices of the structure maps ----

    def left_mult_mat(self, elem):
        """Matrix of (x |-> a x) for a sparse element a of A."""
        n = self.n
        m = Mat.zeros(self.field, n, n)
        for j in range(n):
            col = self.mul(elem, self.basis_elem(j))
            for (k,), c in col.items():
                m.data[k][j] = c
        return m

    def right_mult_mat(self, elem):
        n = self.n
        m = Mat.zeros(self.field, n, n)
        for j in range(n):
            col = self.mul(self.basis_elem(j), elem)
            for (k,), c in col.items():
                m.data[k][j] = c
        return m

    def delta_mat(self):
        n = self.n
        m = Mat.zeros(self.field, n * n, n)
        for i in range(n):
            for j, k, c in self.comul_pairs[i]:
                m.data[j * n + k][i] = c
        return m

    def counit_mat(self):
        return Mat(self.field, 1, self.n, [list(self.counit)])

    def eps_of(self, elem):
        """Counit of an element of A (1-leg sparse dict)."""
        s = self.field.zero
        for (i,), c in elem.items():
            s = s + self.counit[i] * c
        return self.field.reduce(s)

    def __repr__(self):
        return "QuasiBialgebra(%s, n=%d over %r)" % (self.name or "?",
                                                     self.n, self.field)


def _assert_cube(t, n, name):
    if len(t) != n or any(len(p) != n for p in t) or \
            any(len(r) != n for p in t for r in p):
        raise ShapeMismatch("%s is not an %d^3 tensor" % (name, n))


def verify_quasibialgebra(A):
    """Check every quasi-bialgebra axiom; one named entry per axiom."""
    f = A.field
    n = A.n
    checks = []
    one = A.unit_elem

    ok = all(T.equal(f, A.mul(A.mul(A.basis_elem(i), A.basis_elem(j)), A.basis_elem(k)),
                     A.mul(A.basis_elem(i), A.mul(A.basis_elem(j), A.basis_elem(k))))
             for i in range(n) for j in range(n) for k in range(n))
    checks.append(VerificationCheck("associativity", ok))

    ok = all(T.equal(f, A.mul(one, A.basis_elem(i)), A.basis_elem(i)) and
             T.equal(f, A.mul(A.basis_elem(i), one), A.basis_elem(i))
             for i in range(n))
    checks.append(VerificationCheck("unitality", ok))

    ok = A.eps_of(one) == f.one and \
        all(A.eps_of(A.mul(A.basis_elem(i), A.basis_elem(j))) ==
            f.reduce(A.counit[i] * A.counit[j])
            for i in range(n) for j in range(n))
    checks.append(VerificationCheck("counit_algebra_map", ok))

    one2 = A.unit_power(2)
    ok = T.equal(f, A.comul_k(one, 2), one2) and \
        all(T.equal(f,
                    A.comul_k(A.mul(A.basis_elem(i), A.basis_elem(j)), 2),
                    A.mul(A.comul_k(A.basis_elem(i), 2),
                          A.comul_k(A.basis_elem(j), 2)))
            for i in range(n) for j in range(n))
    checks.append(VerificationCheck("comul_algebra_map", ok))

    ok = True
    for i in range(n):
        d = A.comul_k(A.basis_elem(i), 2)
        if not T.equal(f, A.eps_leg(d, 0), A.basis_elem(i)) or \
                not T.equal(f, A.eps_leg(d, 1), A.basis_elem(i)):
            ok = False
            break
    checks.append(VerificationCheck("counitality", ok))

    one3 = A.unit_power(3)
    ok = T.equal(f, A.mul(A.phi_elem, A.phi_inv_elem), one3) and \
        T.equal(f, A.mul(A.phi_inv_elem, A.phi_elem), one3)
    checks.append(VerificationCheck("phi_invertible", ok))

    ok = T.equal(f, A.eps_leg(A.phi_elem, 1), one2)
    checks.append(VerificationCheck("phi_counital", ok))

    # (A x A x Delta)(Phi) (Delta x A x A)(Phi) =
    #     (1 x Phi) (A x Delta x A)(Phi) (Phi x 1)
    lhs = A.mul(A.delta_leg(A.phi_elem, 2), A.delta_leg(A.phi_elem, 0))
    rhs = A.mul_many(T.tensor(A.unit_elem, A.phi_elem),
                     A.delta_leg(A.phi_elem, 1),
                     T.tensor(A.phi_elem, A.unit_elem))
    checks.append(VerificationCheck("cocycle", T.equal(f, lhs, rhs)))

    ok = True
    for i in range(n):
        d2 = A.comul_k(A.basis_elem(i), 2)
        lhs = A.mul(A.phi_elem, A.delta_leg(d2, 0))
        rhs = A.mul(A.delta_leg(d2, 1), A.phi_elem)
        if not T.equal(f, lhs, rhs):
            ok = False
            break
    checks.append(VerificationCheck("quasi_coassociativity", ok))

    ok = T.equal(f, A.eps_leg(A.phi_elem, 0), one2) and \
        T.equal(f, A.eps_leg(A.phi_elem, 2), one2) and \
        all(T.equal(f, A.eps_leg(A.phi_inv_elem, pos), one2) for pos in (0, 1, 2))
    checks.append(VerificationCheck("eps_phi_identities", ok))

    return VerificationReport(checks)


class NoInverse:
    def __repr__(self):
        return "NoInverse"


def solve_phi_inverse(A_or_data, phi=None):
    """Two-sided inverse of Phi in the algebra A^(x)3, or NoInverse.

    Accepts either a QuasiBialgebra (inverting its phi) or is reused by the
    parser before phi_inv exists, via a QuasiBialgebra carrying any phi_inv.
    """
    A = A_or_data
    f = A.field
    n3 = A.n ** 3
    dims = (A.n,) * 3
    phi_elem = T.flat_to_elem(phi, dims) if phi is not None else A.phi_elem
    rows = []
    for j in range(n3):
        basis = T.flat_to_elem([f.one if i == j else f.zero for i in range(n3)], dims)
        left = T.elem_to_vec(f, A.mul(phi_elem, basis), dims)
        right = T.elem_to_vec(f, A.mul(basis, phi_elem), dims)
        rows.append(left + right)
    m = Mat(f, n3, 2 * n3, rows).transpose()
    target = T.elem_to_vec(f, A.unit_power(3), dims)
    sol = solve_affine(m, target + target)
    if isinstance(sol, NoSolution):
        return NoInverse()
    return sol.x0


class Preantipode:
    """An endomorphism S of A, by its n x n matrix in the chosen basis."""

    __slots__ = ("s",)

    def __init__(self, s):
        self.s = s

    def apply(self, A, elem):
        out = {}
        for (j,), c in elem.items():
            for k in range(A.n):
                v = self.s.data[k][j]
                if v:
                    T.add_into(out, (k,), v * c)
        return T.normalize(A.field, out)


class QuasiAntipode:
    """A quasi-antipode triple (s, alpha, beta)."""

    __slots__ = ("s", "alpha", "beta")

    def __init__(self, s, alpha, beta):
        self.s = s
        self.alpha = alpha
        self.beta = beta


class PreantipodeSet:
    """The full affine solution set of the preantipode system."""

    def __init__(self, A, x0, homogeneous):
        self.A = A
        self.x0 = x0                    # Mat, one solution
        self.homogeneous = homogeneous  # Subspace of End(A), vec'd row-major

    @property
    def dim(self):
        return self.homogeneous.dim

    def representatives(self):
        """x0 and x0 + each homogeneous basis vector (covers the affine set
        for linear verification purposes)."""
        yield Preantipode(self.x0)
        n = self.A.n
        for j in range(self.homogeneous.dim):
            col = self.homogeneous.basis.col(j)
            delta = Mat(self.A.field, n, n,
                        [[col[r * n + c] for c in range(n)] for r in range(n)])
            yield Preantipode(self.x0 + delta)

    def __repr__(self):
        return "PreantipodeSet(dim=%d)" % self.dim


def _mat_from_vec(field, vec, n):
    return Mat(field, n, n, [[vec[r * n + c] for c in range(n)] for r in range(n)])


def solve_preantipode(A):
    """Solve the affine linear system defining a preantipode.

    Unknowns: the n^2 entries of S (row-major).  Equations: for all basis
    a, b both one-sided identities S(a_1 b) a_2 = eps(a) S(b) = a_1 S(b a_2),
    plus the single affine normalization Phi^1 S(Phi^2) Phi^3 = 1.
    Returns None or a PreantipodeSet.
    """
    f = A.field
    n = A.n
    nun = n * n
    rows = []
    rhs = []
    zrow = [f.zero] * nun

    def new_rows(count):
        return [list(zrow) for _ in range(count)]

    for a in range(n):
        eps_a = A.counit[a]
        for b in range(n):
            left = new_rows(n)   # S(a1 b) a2 - eps(a) S(b), coords in A
            right = new_rows(n)  # a1 S(b a2) - eps(a) S(b)
            for a1, a2, c in A.comul_pairs[a]:
                for w, cm in A.mult_pairs[a1][b]:
                    for k in range(n):
                        coef = c * cm
                        for l, cl in A.mult_pairs[k][a2]:
                            left[l][k * n + w] = left[l][k * n + w] + coef * cl
                for w, cm in A.mult_pairs[b][a2]:
                    for k in range(n):
                        coef = c * cm
                        for l, cl in A.mult_pairs[a1][k]:
                            right[l][k * n + w] = right[l][k * n + w] + coef * cl
            if eps_a:
                for l in range(n):
                    left[l][l * n + b] = left[l][l * n + b] - eps_a
                    right[l][l * n + b] = right[l][l * n + b] - eps_a
            for r in left + right:
                rows.append(f.reduce_row(r))
                rhs.append(f.zero)

    norm = new_rows(n)  # Phi^1 S(Phi^2) Phi^3 = 1
    for (f1, f2, f3), c in A.phi_elem.items():
        for k in range(n):
            for w, c1 in A.mult_pairs[f1][k]:
                for l, c2 in A.mult_pairs[w][f3]:
                    norm[l][k * n + f2] = norm[l][k * n + f2] + c * c1 * c2
    for i, r in enumerate(norm):
        rows.append(f.reduce_row(r))
        rhs.append(A.unit[i])

    sol = solve_affine(Mat(f, len(rows), nun, rows), rhs)
    if isinstance(sol, NoSolution):
        return None
    return PreantipodeSet(A, _mat_from_vec(f, sol.x0, n), sol.homogeneous)


def verify_preantipode(A, S):
    """Check the defining preantipode identities plus the closure identity
    S(ab) = S(phi^1 b) phi^2 S(a phi^3) that must follow from them."""
    f = A.field
    n = A.n
    sp = S.apply

    ok_left = ok_right = True
    for a in range(n):
        ea = A.counit[a]
        for b in range(n):
            target = T.scale(sp(A, A.basis_elem(b)), ea)
            target = T.normalize(f, target)
            lhs = {}
            rhs = {}
            for a1, a2, c in A.comul_pairs[a]:
                t = A.mul(sp(A, A.mul(A.basis_elem(a1), A.basis_elem(b))),
                          A.basis_elem(a2))
                for k, v in t.items():
                    T.add_into(lhs, k, v * c)
                t = A.mul(A.basis_elem(a1),
                          sp(A, A.mul(A.basis_elem(b), A.basis_elem(a2))))
                for k, v in t.items():
                    T.add_into(rhs, k, v * c)
            if not T.equal(f, T.normalize(f, lhs), target):
                ok_left = False
            if not T.equal(f, T.normalize(f, rhs), target):
                ok_right = False

    norm = {}
    for (f1, f2, f3), c in A.phi_elem.items():
        t = A.mul_many(A.basis_elem(f1), sp(A, A.basis_elem(f2)), A.basis_elem(f3))
        for k, v in t.items():
            T.add_into(norm, k, v * c)
    ok_norm = T.equal(f, T.normalize(f, norm), A.unit_elem)

    ok_cor = True
    for a in range(n):
        for b in range(n):
            lhs = sp(A, A.mul(A.basis_elem(a), A.basis_elem(b)))
            rhs = {}
            for (p1, p2, p3), c in A.phi_inv_elem.items():
                t = A.mul_many(sp(A, A.mul(A.basis_elem(p1), A.basis_elem(b))),
                               A.basis_elem(p2),
                               sp(A, A.mul(A.basis_elem(a), A.basis_elem(p3))))
                for k, v in t.items():
                    T.add_into(rhs, k, v * c)
            if not T.equal(f, lhs, T.normalize(f, rhs)):
                ok_cor = False
                break
        if not ok_cor:
            break

    return VerificationReport([
        VerificationCheck("left_identity", ok_left),
        VerificationCheck("right_identity", ok_right),
        VerificationCheck("phi_normalization", ok_norm),
        VerificationCheck("corollary_factorization", ok_cor),
    ])


def verify_quasiantipode(A, qa):
    """Check that (s, alpha, beta) is a quasi-antipode for A."""
    f = A.field
    n = A.n
    s = Preantipode(qa.s).apply
    alpha = T.vec_to_elem(qa.alpha)
    beta = T.vec_to_elem(qa.beta)

    ok = T.equal(f, s(A, A.unit_elem), A.unit_elem) and \
        all(T.equal(f,
                    s(A, A.mul(A.basis_elem(i), A.basis_elem(j))),
                    A.mul(s(A, A.basis_elem(j)), s(A, A.basis_elem(i))))
            for i in range(n) for j in range(n))
    checks = [VerificationCheck("anti_homomorphism", ok)]

    ok_l = ok_r = True
    for a in range(n):
        ea = A.counit[a]
        lhs = {}
        rhs = {}
        for a1, a2, c in A.comul_pairs[a]:
            t = A.mul_many(s(A, A.basis_elem(a1)), alpha, A.basis_elem(a2))
            for k, v in t.items():
                T.add_into(lhs, k, v * c)
            t = A.mul_many(A.basis_elem(a1), beta, s(A, A.basis_elem(a2)))
            for k, v in t.items():
                T.add_into(rhs, k, v * c)
        if not T.equal(f, T.normalize(f, lhs), T.normalize(f, T.scale(alpha, ea))):
            ok_l = False
        if not T.equal(f, T.normalize(f, rhs), T.normalize(f, T.scale(beta, ea))):
            ok_r = False
    checks.append(VerificationCheck("alpha_axiom", ok_l))
    checks.append(VerificationCheck("beta_axiom", ok_r))

    acc = {}
    for (f1, f2, f3), c in A.phi_elem.items():
        t = A.mul_many(A.basis_elem(f1), beta, s(A, A.basis_elem(f2)),
                       alpha, A.basis_elem(f3))
        for k, v in t.items():
            T.add_into(acc, k, v * c)
    checks.append(VerificationCheck(
        "phi_axiom", T.equal(f, T.normalize(f, acc), A.unit_elem)))

    acc = {}
    for (p1, p2, p3), c in A.phi_inv_elem.items():
        t = A.mul_many(s(A, A.basis_elem(p1)), alpha, A.basis_elem(p2),
                       beta, s(A, A.basis_elem(p3)))
        for k, v in t.items():
            T.add_into(acc, k, v * c)
    checks.append(VerificationCheck(
        "phi_inv_axiom", T.equal(f, T.normalize(f, acc), A.unit_elem)))

    return VerificationReport(checks)
