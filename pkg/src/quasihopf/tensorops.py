"""Sparse elements of tensor powers and the bookkeeping to act on them.

An element of V1 (x) ... (x) Vk is a dict mapping index tuples to nonzero
scalars.  Formulas with Sweedler-style summations are transcribed as nested
loops over these dicts plus per-basis structure tables, and the results are
converted back to flat coordinate vectors with the global index convention
(first factor most significant).
"""


def vec_to_elem(vec):
    return {(i,): c for i, c in enumerate(vec) if c}


def elem_to_vec(field, elem, dims):
    """Flatten an element of a tensor product with the given factor dims."""
    total = 1
    for d in dims:
        total *= d
    out = [field.zero] * total
    for key, c in elem.items():
        assert len(key) == len(dims)
        idx = 0
        for i, d in zip(key, dims):
            idx = idx * d + i
        out[idx] = field.reduce(out[idx] + c)
    return out


def flat_to_elem(vec, dims):
    """Inverse of elem_to_vec."""
    elem = {}
    for idx, c in enumerate(vec):
        if c:
            key = []
            rest = idx
            for d in reversed(dims):
                key.append(rest % d)
                rest //= d
            elem[tuple(reversed(key))] = c
    return elem


def add_into(dst, key, c):
    if c:
        prev = dst.get(key)
        if prev is None:
            dst[key] = c
        else:
            dst[key] = prev + c


def normalize(field, elem):
    red = field.reduce
    out = {}
    for k, c in elem.items():
        c = red(c)
        if c:
            out[k] = c
    return out


def scale(elem, c):
    if not c:
        return {}
    return {k: v * c for k, v in elem.items()}


def add(field, x, y):
    out = dict(x)
    for k, c in y.items():
        add_into(out, k, c)
    return normalize(field, out)


def sub(field, x, y):
    out = dict(x)
    for k, c in y.items():
        add_into(out, k, -c)
    return normalize(field, out)


def tensor(x, y):
    out = {}
    for kx, cx in x.items():
        for ky, cy in y.items():
            out[kx + ky] = cx * cy
    return out


def equal(field, x, y):
    return not sub(field, x, y)


class TableLin:
    """A linear map stored as sparse columns: table[j] = [(i, c), ...]."""

    __slots__ = ("table", "out_len")

    def __init__(self, table, out_len):
        self.table = table
        self.out_len = out_len

    @classmethod
    def from_mat(cls, m):
        table = []
        for j in range(m.cols):
            col = []
            for i in range(m.rows):
                c = m.data[i][j]
                if c:
                    col.append((i, c))
            table.append(col)
        return cls(table, m.rows)

    def apply_index(self, j, c=None):
        if c is None:
            return dict(self.table[j])
        return {(i,): v * c for i, v in self.table[j]}

    def apply(self, field, vec_elem):
        """Apply to a sparse element keyed by 1-tuples."""
        out = {}
        for (j,), c in vec_elem.items():
            for i, v in self.table[j]:
                add_into(out, (i,), v * c)
        return normalize(field, out)
