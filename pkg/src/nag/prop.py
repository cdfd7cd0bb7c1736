"""Props as carriers: permutations, the interleaving permutation sigma_{m,n},
the bialgebra and total commutativity laws, and a sampled axiom checker."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Protocol, Sequence

from .errors import PreconditionError, require
from .exact import Matrix
from .exact.scalars import Q, one, zero


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..N}, stored as its 1-indexed image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise PreconditionError(f"images is not a bijection of {{1,…,{len(imgs)}}}: {imgs}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        try:
            return cls(tuple(int(t) for t in text.split()))
        except ValueError as exc:
            raise PreconditionError(f"permutation must be whitespace-separated integers: {text!r}") from exc

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """(self * other)(k) = self(other(k))."""
        require(self.size == other.size, "permutation sizes differ")
        return Permutation(tuple(self(other(k)) for k in range(1, self.size + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.size + 1))

    def __str__(self):
        return " ".join(str(x) for x in self.images)


def sigma_perm(m: int, n: int) -> Permutation:
    """sigma_{m,n}((j-1)m + i) = (i-1)n + j for 1 <= i <= m, 1 <= j <= n."""
    require(isinstance(m, int) and isinstance(n, int) and m >= 1 and n >= 1, "m, n ≥ 1")
    images = [0] * (m * n)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            images[(j - 1) * m + i - 1] = (i - 1) * n + j
    return Permutation(tuple(images))


def block_swap(p: int, q: int) -> Permutation:
    """The symmetry moving the first p letters after the last q."""
    return Permutation(tuple(k + q for k in range(1, p + 1)) + tuple(k - p for k in range(p + 1, p + q + 1)))


class PropCarrier(Protocol):
    name: str

    def shape(self, a) -> tuple[int, int]: ...
    def compose(self, a, b): ...
    def oplus(self, a, b): ...
    def identity(self, n: int): ...
    def embed(self, perm: Permutation): ...
    def equal(self, a, b) -> bool: ...


class MatrixCarrier:
    """Matrices over Q (or Q(i)): composition is the matrix product a @ b."""

    def __init__(self, kind: str = Q, name: str = "MatQ"):
        self.kind = kind
        self.name = name

    def shape(self, a: Matrix):
        return a.shape

    def compose(self, a: Matrix, b: Matrix) -> Matrix:
        if a.ncols != b.nrows:
            raise PreconditionError(f"shape mismatch: {a.shape} ∘ {b.shape}")
        return a @ b

    def oplus(self, a: Matrix, b: Matrix) -> Matrix:
        return a.oplus(b)

    def identity(self, n: int) -> Matrix:
        return Matrix.identity(n, self.kind)

    def unit(self) -> Matrix:
        return Matrix.zeros(0, 0, self.kind)

    def embed(self, perm: Permutation) -> Matrix:
        """Column k has its single 1 in row perm(k)."""
        n = perm.size
        z, o = zero(self.kind), one(self.kind)
        rows = [[z] * n for _ in range(n)]
        for k in range(1, n + 1):
            rows[perm(k) - 1][k - 1] = o
        return Matrix(n, n, rows, self.kind)

    def equal(self, a, b) -> bool:
        return a == b

    def format(self, a) -> str:
        return str(a)


class BlockMatrixCarrier(MatrixCarrier):
    """The prop of matrices over the ring of k x k rational matrices.

    An element of shape (n, m) is stored as an (nk) x (mk) rational matrix;
    block products do not commute, so the commutativity laws can fail here.
    """

    def __init__(self, k: int = 2):
        super().__init__(Q, f"Mat(M{k}(Q))")
        self.k = k

    def shape(self, a: Matrix):
        return (a.nrows // self.k, a.ncols // self.k)

    def compose(self, a: Matrix, b: Matrix) -> Matrix:
        if a.ncols != b.nrows:
            raise PreconditionError(f"shape mismatch: {self.shape(a)} ∘ {self.shape(b)}")
        return a @ b

    def identity(self, n: int) -> Matrix:
        return Matrix.identity(n * self.k)

    def embed(self, perm: Permutation) -> Matrix:
        return super().embed(perm).kron(Matrix.identity(self.k))

    def element(self, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
        """Assemble an element from a grid of k x k blocks."""
        rows = []
        for brow in blocks:
            for r in range(self.k):
                rows.append([x for b in brow for x in b.rows[r]])
        ncols = len(blocks[0]) * self.k if blocks else 0
        return Matrix(len(rows), ncols, rows, Q)


class ReversedStackingCarrier(MatrixCarrier):
    """A deliberately broken carrier: a (+) b puts a in the top-right block and
    b in the bottom-left block. Used to show the axiom suite catches it."""

    def __init__(self):
        super().__init__(Q, "broken-reversed-stacking")

    def oplus(self, a: Matrix, b: Matrix) -> Matrix:
        z = Matrix.zeros
        top = z(a.nrows, b.ncols).hstack(a)
        bottom = b.hstack(z(b.nrows, a.ncols))
        return Matrix(top.nrows + bottom.nrows, top.ncols, top.rows + bottom.rows, Q, _trusted=True)


def _fold_oplus(carrier, items: Sequence):
    acc = items[0]
    for x in items[1:]:
        acc = carrier.oplus(acc, x)
    return acc


def bialgebra_sides(carrier, p, q):
    """Both sides of q∘p = (p,…,p)_m ∘ sigma_{m,n} ∘ (q,…,q)_n for p in A_{1,n}, q in A_{m,1}."""
    one_n = carrier.shape(p)
    m_one = carrier.shape(q)
    if one_n[0] != 1 or m_one[1] != 1:
        raise PreconditionError("shape mismatch: p must be a row element A_{1,n} and q a column element A_{m,1}")
    n, m = one_n[1], m_one[0]
    if n < 1 or m < 1:
        raise PreconditionError("shape mismatch: m, n ≥ 1")
    lhs = carrier.compose(q, p)
    rhs = carrier.compose(
        carrier.compose(_fold_oplus(carrier, [p] * m), carrier.embed(sigma_perm(m, n))),
        _fold_oplus(carrier, [q] * n),
    )
    return lhs, rhs


def check_bialgebra_comm(carrier, p, q) -> bool:
    lhs, rhs = bialgebra_sides(carrier, p, q)
    return carrier.equal(lhs, rhs)


def total_comm_sides(carrier, x, y, side: str):
    """Both sides of the total commutativity law.

    minus: x in A_{1,m}, y in A_{1,n}:  x∘(y,…,y)_m = y∘(x,…,x)_n∘sigma_{n,m}
    plus:  x in A_{m,1}, y in A_{n,1}:  (y,…,y)_m∘x = sigma_{m,n}∘(x,…,x)_n∘y
    """
    sx, sy = carrier.shape(x), carrier.shape(y)
    if side == "minus":
        if sx[0] != 1 or sy[0] != 1:
            raise PreconditionError("shape mismatch: on the minus side x ∈ A_{1,m}, y ∈ A_{1,n}")
        m, n = sx[1], sy[1]
        if m < 1 or n < 1:
            raise PreconditionError("shape mismatch: m, n ≥ 1")
        lhs = carrier.compose(x, _fold_oplus(carrier, [y] * m))
        rhs = carrier.compose(carrier.compose(y, _fold_oplus(carrier, [x] * n)), carrier.embed(sigma_perm(n, m)))
    elif side == "plus":
        if sx[1] != 1 or sy[1] != 1:
            raise PreconditionError("shape mismatch: on the plus side x ∈ A_{m,1}, y ∈ A_{n,1}")
        m, n = sx[0], sy[0]
        if m < 1 or n < 1:
            raise PreconditionError("shape mismatch: m, n ≥ 1")
        lhs = carrier.compose(_fold_oplus(carrier, [y] * m), x)
        rhs = carrier.compose(carrier.compose(carrier.embed(sigma_perm(m, n)), _fold_oplus(carrier, [x] * n)), y)
    else:
        raise PreconditionError(f"side must be 'minus' or 'plus', got {side!r}")
    return lhs, rhs


def check_total_comm(carrier, x, y, side: str = "minus") -> bool:
    lhs, rhs = total_comm_sides(carrier, x, y, side)
    return carrier.equal(lhs, rhs)


class BioView:
    """Rows A_{1,n} (minus side) and columns A_{n,1} (plus side) of a matrix carrier."""

    def __init__(self, carrier: MatrixCarrier):
        self.carrier = carrier

    def is_minus(self, a) -> bool:
        return self.carrier.shape(a)[0] == 1

    def is_plus(self, a) -> bool:
        return self.carrier.shape(a)[1] == 1

    def minus_to_plus(self, a):
        """The shared monoid P(1): a 1x1 row read as a 1x1 column."""
        require(self.carrier.shape(a) == (1, 1), "minus(1) and plus(1) elements are 1x1")
        return a.T


# axiom suite


@dataclass
class LawResult:
    law: str
    status: str
    checked: int
    witness: Any = None

    def to_dict(self, fmt=str):
        return {
            "law": self.law,
            "status": self.status,
            "checked": self.checked,
            "witness": None if self.witness is None else [fmt(w) for w in self.witness],
        }


@dataclass
class AxiomReport:
    carrier: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def law(self, name: str) -> LawResult:
        return next(r for r in self.results if r.law == name)

    def to_dict(self, fmt=str):
        return {"carrier": self.carrier, "passed": self.passed, "laws": [r.to_dict(fmt) for r in self.results]}


def _run_law(name, tuples, check) -> LawResult:
    checked = 0
    for t in tuples:
        checked += 1
        if not check(*t):
            return LawResult(name, "fail", checked, t)
    return LawResult(name, "pass", checked)


def prop_axiom_suite(carrier, samples: Sequence, max_perm_size: int = 3) -> AxiomReport:
    """Check the prop laws on every shape-compatible tuple drawn from samples.

    Tuples are visited in index order, so the report (including the first
    witness of a failure) is deterministic.
    """
    S = list(samples)
    sh = [carrier.shape(a) for a in S]
    C, O, eq = carrier.compose, carrier.oplus, carrier.equal
    idx = range(len(S))

    def assoc_triples():
        for i, j, k in itertools.product(idx, repeat=3):
            if sh[i][1] == sh[j][0] and sh[j][1] == sh[k][0]:
                yield S[i], S[j], S[k]

    def interchange_quads():
        for i, j, k, l in itertools.product(idx, repeat=4):
            if sh[i][1] == sh[k][0] and sh[j][1] == sh[l][0]:
                yield S[i], S[j], S[k], S[l]

    perms = [Permutation(p) for n in range(1, max_perm_size + 1) for p in itertools.permutations(range(1, n + 1))]

    report = AxiomReport(carrier.name)
    report.results.append(_run_law("compose_associative", assoc_triples(), lambda a, b, c: eq(C(C(a, b), c), C(a, C(b, c)))))
    report.results.append(
        _run_law(
            "identity_neutral",
            ((a,) for a in S),
            lambda a: eq(C(carrier.identity(carrier.shape(a)[0]), a), a) and eq(C(a, carrier.identity(carrier.shape(a)[1])), a),
        )
    )
    report.results.append(
        _run_law(
            "oplus_associative",
            ((S[i], S[j], S[k]) for i, j, k in itertools.product(idx, repeat=3)),
            lambda a, b, c: eq(O(O(a, b), c), O(a, O(b, c))),
        )
    )
    unit = carrier.identity(0)
    report.results.append(
        _run_law("oplus_unit", ((a,) for a in S), lambda a: eq(O(unit, a), a) and eq(O(a, unit), a))
    )
    report.results.append(
        _run_law("interchange", interchange_quads(), lambda a, b, c, d: eq(C(O(a, b), O(c, d)), O(C(a, c), C(b, d))))
    )

    def natural(a, b):
        (n1, m1), (n2, m2) = carrier.shape(a), carrier.shape(b)
        if n1 + n2 == 0 or m1 + m2 == 0:
            return eq(O(a, b), O(b, a))
        lhs = C(carrier.embed(block_swap(n1, n2)) if n1 + n2 else carrier.identity(0), O(a, b))
        rhs = C(O(b, a), carrier.embed(block_swap(m1, m2)) if m1 + m2 else carrier.identity(0))
        return eq(lhs, rhs)

    report.results.append(_run_law("symmetry_natural", ((S[i], S[j]) for i, j in itertools.product(idx, repeat=2)), natural))
    report.results.append(
        _run_law(
            "embed_homomorphism",
            ((p, q) for p in perms for q in perms if p.size == q.size),
            lambda p, q: eq(carrier.embed(p * q), C(carrier.embed(p), carrier.embed(q))),
        )
    )
    return report


def random_matrix_samples(rng, count: int, max_dim: int = 2, kind: str = Q, den: int = 3):
    """Random rational matrices with shapes in {0..max_dim}^2 for the axiom suite."""
    from fractions import Fraction

    out = []
    for _ in range(count):
        n, m = rng.randint(0, max_dim), rng.randint(0, max_dim)
        rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, den)) for _ in range(m)] for _ in range(n)]
        out.append(Matrix(n, m, rows, kind))
    return out
