"""Exact scalar fields: arbitrary-precision rationals and prime fields F_p.

Scalars are plain objects supporting +, -, * (gmpy2.mpq for the rationals,
small nonnegative ints for F_p).  Prime-field values are kept reduced to
[0, p); the `reduce`/`reduce_row` hooks let kernels defer the mod-p
reduction to one call per produced entry or row.
"""

from gmpy2 import mpq


class FieldError(ValueError):
    pass


class Rationals:
    """The field Q, with gmpy2.mpq scalars (auto-normalizing big rationals)."""

    kind = "Q"
    p = None
    characteristic = 0

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, x):
        return mpq(x)

    def reduce(self, x):
        return x

    def reduce_row(self, row):
        return row

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / mpq(a)

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return mpq(a) / b

    def parse(self, s):
        try:
            return mpq(str(s).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError("bad rational scalar %r" % (s,)) from exc

    def fmt(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The field F_p for a prime p; scalars are ints in [0, p)."""

    kind = "Fp"

    def __init__(self, p):
        if not isinstance(p, int) or not _is_prime(p):
            raise FieldError("modulus %r is not prime" % (p,))
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def __call__(self, x):
        return int(x) % self.p

    def reduce(self, x):
        return x % self.p

    def reduce_row(self, row):
        p = self.p
        return [x % p for x in row]

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def parse(self, s):
        s = str(s).strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return self.div(int(num), int(den) % self.p)
        try:
            return int(s) % self.p
        except ValueError as exc:
            raise FieldError("bad F_%d scalar %r" % (self.p, s)) from exc

    def fmt(self, x):
        return str(x % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return "F_%d" % self.p


QQ = Rationals()


def field_from_spec(spec):
    """Build a field from its file-format spec: "Q" or {"Fp": p}."""
    if spec == "Q":
        return Rationals()
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        return PrimeField(spec["Fp"])
    raise FieldError("unsupported field spec %r" % (spec,))


def field_to_spec(field):
    if field.kind == "Q":
        return "Q"
    return {"Fp": field.p}
