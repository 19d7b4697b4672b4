"""The built-in example algebras.

  * kz2_group:        group algebra of Z_2, trivial associator (Hopf).
  * kz2_twisted:      same algebra with Phi = 1x1x1 - 2 pxpxp, p = (1-g)/2;
                      a genuine quasi-bialgebra with preantipode a |-> ag.
  * idempotent_monoid: k{1,e}, e^2 = e, group-like Delta; a bialgebra with
                      no antipode (e is not invertible).
  * sweedler4:        Sweedler's 4-dimensional Hopf algebra (not unimodular).
  * kz4_monoid:       monoid algebra of (Z_4, *) with group-like Delta; a
                      bialgebra with no antipode and non-faithful quotient
                      functor.

Default fields: Q, except idempotent_monoid (F_3) and kz4_monoid (F_5) which
exercise prime-field arithmetic.  The Z_2 family requires characteristic
different from 2 and the constructors enforce that.
"""

from .fields import QQ, PrimeField, FieldError
from .matrix import Mat
from .qba import QuasiBialgebra


def _grouplike(field, n, prod, unit_index, name, labels):
    z, o = field.zero, field.one
    mult = [[[o if k == prod(i, j) else z for k in range(n)]
             for j in range(n)] for i in range(n)]
    comul = [[[o if (j == i and k == i) else z for k in range(n)]
              for j in range(n)] for i in range(n)]
    unit = [o if i == unit_index else z for i in range(n)]
    counit = [o] * n
    phi = [z] * n ** 3
    u = unit_index
    phi[(u * n + u) * n + u] = o
    return QuasiBialgebra(field, n, mult, unit, comul, counit, phi, list(phi),
                          name=name, basis_labels=labels)


def _require_odd_char(field, name):
    if field.characteristic == 2:
        raise FieldError("%s needs a field of characteristic != 2" % name)


def kz2_group(field=None):
    field = field or QQ
    _require_odd_char(field, "kz2_group")
    return _grouplike(field, 2, lambda i, j: (i + j) % 2, 0,
                      "kz2_group", ["1", "g"])


def kz2_twisted(field=None):
    field = field or QQ
    _require_odd_char(field, "kz2_twisted")
    A = kz2_group(field)
    half = field.div(field.one, field(2))
    p = [half, field.reduce(-half)]          # p = (1 - g)/2
    phi = list(A.phi)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                phi[(i * 2 + j) * 2 + k] = field.reduce(
                    phi[(i * 2 + j) * 2 + k] - field(2) * p[i] * p[j] * p[k])
    return QuasiBialgebra(field, 2, A.mult, A.unit, A.comul, A.counit,
                          phi, list(phi),  # Phi is an involution
                          name="kz2_twisted", basis_labels=["1", "g"])


def idempotent_monoid(field=None):
    field = field or PrimeField(3)
    return _grouplike(field, 2, lambda i, j: min(i + j, 1), 0,
                      "idempotent_monoid", ["1", "e"])


def kz4_monoid(field=None):
    field = field or PrimeField(5)
    return _grouplike(field, 4, lambda i, j: (i * j) % 4, 1,
                      "kz4_monoid", ["e0", "e1", "e2", "e3"])


def sweedler4(field=None):
    """Basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx,
    Delta(g) = g (x) g, Delta(x) = 1 (x) x + x (x) g."""
    field = field or QQ
    _require_odd_char(field, "sweedler4")
    z, o = field.zero, field.one
    mo = field.reduce(-o)
    n = 4
    mult = [[[z] * n for _ in range(n)] for _ in range(n)]

    def setp(i, j, k, c):
        mult[i][j][k] = c

    for j in range(n):
        setp(0, j, j, o)
        setp(j, 0, j, o)
    setp(1, 1, 0, o)   # g g = 1
    setp(1, 2, 3, o)   # g x = gx
    setp(1, 3, 2, o)   # g gx = x
    setp(2, 1, 3, mo)  # x g = -gx
    setp(3, 1, 2, mo)  # gx g = -x
    # all products with two x factors vanish

    comul = [[[z] * n for _ in range(n)] for _ in range(n)]
    comul[0][0][0] = o
    comul[1][1][1] = o
    comul[2][0][2] = o
    comul[2][2][1] = o
    comul[3][1][3] = o
    comul[3][3][0] = o
    unit = [o, z, z, z]
    counit = [o, o, z, z]
    phi = [z] * n ** 3
    phi[0] = o
    return QuasiBialgebra(field, n, mult, unit, comul, counit, phi, list(phi),
                          name="sweedler4", basis_labels=["1", "g", "x", "gx"])


CATALOG = {
    "kz2_group": kz2_group,
    "kz2_twisted": kz2_twisted,
    "idempotent_monoid": idempotent_monoid,
    "sweedler4": sweedler4,
    "kz4_monoid": kz4_monoid,
}

# entries where the preantipode/Hopf predicates are expected true
HOPF_ENTRIES = ("kz2_group", "kz2_twisted", "sweedler4")
NON_HOPF_ENTRIES = ("idempotent_monoid", "kz4_monoid")


def catalog_names():
    return sorted(CATALOG)


def catalog_entry(name):
    try:
        return CATALOG[name]()
    except KeyError:
        raise KeyError("unknown catalog entry %r (have: %s)"
                       % (name, ", ".join(catalog_names())))


def known_quasi_antipode(A):
    """A verified quasi-antipode triple (s, alpha, beta) for catalog entries
    that have one, else None."""
    field = A.field
    o, z = field.one, field.zero
    if A.name == "kz2_group":
        s = Mat.identity(field, 2)
        return s, [o, z], [o, z]
    if A.name == "sweedler4":
        mo = field.reduce(-o)
        s = Mat.from_rows(field, [
            [o, z, z, z],
            [z, o, z, z],
            [z, z, z, mo],
            [z, z, o, z],
        ])
        return s, [o, z, z, z], [o, z, z, z]
    return None
