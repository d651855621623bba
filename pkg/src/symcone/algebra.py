"""Euclidean Jordan algebras over fixed coordinate bases.

Every algebra is described by an :class:`AlgebraDescriptor` naming one of the
classified simple families (real symmetric, complex hermitian, quaternionic
hermitian, spin factor, 3x3 octonionic hermitian) or a direct sum of those.
Elements are real coordinate vectors in a fixed canonical basis per family:

* matrix families: diagonal units E_ii, then (B E_ij + conj(B) E_ji) / sqrt(2)
  for i < j, one basis vector per component of the entry type (1 for real,
  1, i for complex, 1, i, j, k for quaternionic);
* spin factor of vector dimension d: plain (scalar, vector) coordinates on
  R + R^d;
* octonionic case: 3 diagonal reals, then the three off-diagonal octonions
  at 8 components each, scaled by 1 / sqrt(2).

With these choices the trace form <a, b> = tr(a o b) is diagonal in
coordinates: the identity Gram matrix for matrix families, and 2 * identity
for spin factors (the unit there has <u, u> = rank = 2).

The Jordan product itself is precomputed once per descriptor as a structure
tensor T with T[i, j, :] = coords(b_i o b_j), so products, multiplication
operators and the quadratic representation are small tensor contractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from . import hypercomplex as hc

__all__ = [
    "Family",
    "AlgebraDescriptor",
    "Element",
    "LinearOperator",
    "make_algebra",
    "direct_sum",
    "unit",
    "basis_elements",
    "jordan_product",
    "left_mult_operator",
    "trace_form",
    "trace_of",
    "norm",
    "quadratic_representation",
    "random_element",
    "check_jordan_identity",
    "check_formal_reality",
    "to_matrix",
    "from_matrix",
    "descriptor_to_record",
    "record_to_descriptor",
    "format_descriptor",
    "parse_descriptor",
]

SQRT2 = float(np.sqrt(2.0))


class Family(str, Enum):
    """Family tags for the classified simple algebras plus direct sums."""

    REAL_SYM = "real"
    COMPLEX_HERM = "complex"
    QUAT_HERM = "quaternion"
    SPIN = "spin"
    ALBERT = "albert"
    SUM = "sum"


_MATRIX_FAMILIES = (Family.REAL_SYM, Family.COMPLEX_HERM, Family.QUAT_HERM)


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Immutable description of an algebra; hashable so contexts can cache."""

    family: Family
    size: int = 0
    summands: tuple["AlgebraDescriptor", ...] = ()

    @property
    def dim(self) -> int:
        if self.family is Family.REAL_SYM:
            return self.size * (self.size + 1) // 2
        if self.family is Family.COMPLEX_HERM:
            return self.size * self.size
        if self.family is Family.QUAT_HERM:
            return self.size * (2 * self.size - 1)
        if self.family is Family.SPIN:
            return self.size + 1
        if self.family is Family.ALBERT:
            return 27
        return sum(s.dim for s in self.summands)

    @property
    def rank(self) -> int:
        if self.family is Family.SPIN:
            return 2
        if self.family is Family.ALBERT:
            return 3
        if self.family is Family.SUM:
            return sum(s.rank for s in self.summands)
        return self.size

    def __str__(self) -> str:
        return format_descriptor(self)


def make_algebra(
    family: Family | str,
    size: int | None = None,
    summands: tuple[AlgebraDescriptor, ...] | list[AlgebraDescriptor] | None = None,
) -> AlgebraDescriptor:
    """Validate and build a descriptor.

    ``size`` is the matrix dimension for the matrix families and the vector
    dimension for spin factors; the octonionic algebra is fixed at 3 x 3 and
    accepts only size 3 (or no size). Direct sums take ``summands`` instead.
    """
    try:
        fam = Family(family)
    except ValueError:
        raise ValueError(f"unknown algebra family tag {family!r}") from None
    if fam is Family.SUM:
        if not summands:
            raise ValueError("direct sum requires at least one summand")
        return AlgebraDescriptor(fam, 0, tuple(summands))
    if summands:
        raise ValueError(f"family {fam.value!r} does not take summands")
    if fam is Family.ALBERT:
        if size not in (None, 3):
            raise ValueError("the octonionic hermitian algebra is fixed at size 3")
        return AlgebraDescriptor(fam, 3)
    if size is None or size < 1:
        raise ValueError(f"family {fam.value!r} requires a positive size, got {size}")
    return AlgebraDescriptor(fam, int(size))


def direct_sum(*parts) -> AlgebraDescriptor:
    """Direct sum of component algebras; accepts varargs or one iterable."""
    if len(parts) == 1 and not isinstance(parts[0], AlgebraDescriptor):
        parts = tuple(parts[0])
    return make_algebra(Family.SUM, summands=tuple(parts))


@dataclass
class Element:
    """An algebra element: a coordinate vector tagged with its algebra."""

    algebra: AlgebraDescriptor
    coords: np.ndarray

    def __post_init__(self) -> None:
        self.coords = np.asarray(self.coords, dtype=float)
        if self.coords.shape != (self.algebra.dim,):
            raise ValueError(
                f"coordinate length {self.coords.shape} does not match "
                f"dim {self.algebra.dim} of {self.algebra}"
            )

    def __add__(self, other: "Element") -> "Element":
        _require_same_algebra(self, other)
        return Element(self.algebra, self.coords + other.coords)

    def __sub__(self, other: "Element") -> "Element":
        _require_same_algebra(self, other)
        return Element(self.algebra, self.coords - other.coords)

    def __mul__(self, scalar: float) -> "Element":
        return Element(self.algebra, self.coords * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "Element":
        return Element(self.algebra, -self.coords)


@dataclass
class LinearOperator:
    """Dense real matrix acting on algebra coordinates."""

    matrix: np.ndarray
    domain: AlgebraDescriptor | None = None
    codomain: AlgebraDescriptor | None = None

    def __post_init__(self) -> None:
        self.matrix = np.asarray(self.matrix, dtype=float)
        if self.matrix.ndim != 2:
            raise ValueError("operator matrix must be 2-dimensional")
        if self.domain is not None and self.matrix.shape[1] != self.domain.dim:
            raise ValueError("operator matrix does not match domain dimension")
        if self.codomain is not None and self.matrix.shape[0] != self.codomain.dim:
            raise ValueError("operator matrix does not match codomain dimension")

    def __call__(self, a: Element) -> Element:
        if self.domain is not None and a.algebra != self.domain:
            raise ValueError("element does not live in the operator's domain")
        target = self.codomain if self.codomain is not None else a.algebra
        return Element(target, self.matrix @ a.coords)


def _require_same_algebra(a: Element, b: Element) -> None:
    if a.algebra != b.algebra:
        raise ValueError(f"algebra mismatch: {a.algebra} vs {b.algebra}")


# ---------------------------------------------------------------------------
# Representation converters. Matrix reps use '...' batch semantics so pools
# and structure-tensor builds can run vectorized.
# ---------------------------------------------------------------------------


def _real_to_rep(coords: np.ndarray, n: int) -> np.ndarray:
    iu = np.triu_indices(n, k=1)
    mat = np.zeros(coords.shape[:-1] + (n, n))
    idx = np.arange(n)
    mat[..., idx, idx] = coords[..., :n]
    off = coords[..., n:] / SQRT2
    mat[..., iu[0], iu[1]] = off
    mat[..., iu[1], iu[0]] = off
    return mat


def _real_from_rep(mat: np.ndarray, n: int) -> np.ndarray:
    iu = np.triu_indices(n, k=1)
    idx = np.arange(n)
    diag = mat[..., idx, idx]
    off = SQRT2 * mat[..., iu[0], iu[1]]
    return np.concatenate([diag, off], axis=-1)


def _complex_to_rep(coords: np.ndarray, n: int) -> np.ndarray:
    iu = np.triu_indices(n, k=1)
    npairs = iu[0].size
    mat = np.zeros(coords.shape[:-1] + (n, n), dtype=complex)
    idx = np.arange(n)
    mat[..., idx, idx] = coords[..., :n]
    packed = coords[..., n:].reshape(coords.shape[:-1] + (npairs, 2))
    entries = (packed[..., 0] + 1j * packed[..., 1]) / SQRT2
    mat[..., iu[0], iu[1]] = entries
    mat[..., iu[1], iu[0]] = np.conj(entries)
    return mat


def _complex_from_rep(mat: np.ndarray, n: int) -> np.ndarray:
    iu = np.triu_indices(n, k=1)
    idx = np.arange(n)
    diag = mat[..., idx, idx].real
    entries = SQRT2 * mat[..., iu[0], iu[1]]
    packed = np.stack([entries.real, entries.imag], axis=-1)
    return np.concatenate(
        [diag, packed.reshape(mat.shape[:-2] + (2 * iu[0].size,))], axis=-1
    )


def _quat_to_rep(coords: np.ndarray, n: int) -> np.ndarray:
    iu = np.triu_indices(n, k=1)
    npairs = iu[0].size
    mat = np.zeros(coords.shape[:-1] + (n, n, 4))
    idx = np.arange(n)
    mat[..., idx, idx, 0] = coords[..., :n]
    packed = coords[..., n:].reshape(coords.shape[:-1] + (npairs, 4)) / SQRT2
    mat[..., iu[0], iu[1], :] = packed
    mat[..., iu[1], iu[0], :] = packed * hc._QUAT_CONJ_SIGNS
    return mat


def _quat_from_rep(mat: np.ndarray, n: int) -> np.ndarray:
    iu = np.triu_indices(n, k=1)
    idx = np.arange(n)
    diag = mat[..., idx, idx, 0]
    packed = SQRT2 * mat[..., iu[0], iu[1], :]
    return np.concatenate(
        [diag, packed.reshape(mat.shape[:-3] + (4 * iu[0].size,))], axis=-1
    )


_ALBERT_PAIRS = ((0, 1), (0, 2), (1, 2))


def _albert_to_rep(coords: np.ndarray) -> np.ndarray:
    mat = np.zeros(coords.shape[:-1] + (3, 3, 8))
    for i in range(3):
        mat[..., i, i, 0] = coords[..., i]
    for p, (i, j) in enumerate(_ALBERT_PAIRS):
        entry = coords[..., 3 + 8 * p : 3 + 8 * (p + 1)] / SQRT2
        mat[..., i, j, :] = entry
        mat[..., j, i, :] = entry * hc._OCT_CONJ_SIGNS
    return mat


def _albert_from_rep(mat: np.ndarray) -> np.ndarray:
    diag = np.stack([mat[..., i, i, 0] for i in range(3)], axis=-1)
    offs = [SQRT2 * mat[..., i, j, :] for i, j in _ALBERT_PAIRS]
    return np.concatenate([diag] + offs, axis=-1)


# ---------------------------------------------------------------------------
# Cached per-descriptor context: structure tensor, Gram diagonal, unit.
# ---------------------------------------------------------------------------


@dataclass
class _Context:
    descriptor: AlgebraDescriptor
    table: np.ndarray          # (dim, dim, dim) structure tensor
    gram: np.ndarray           # (dim,) diagonal of the trace-form Gram matrix
    unit_coords: np.ndarray    # (dim,)
    block_slices: tuple[slice, ...] = ()


_CONTEXT_CACHE: dict[AlgebraDescriptor, _Context] = {}


def _pairwise_sym(products: np.ndarray) -> np.ndarray:
    """Symmetrize a (dim, dim, ...) array of basis products in its pair axes."""
    return 0.5 * (products + np.swapaxes(products, 0, 1))


def _build_table(desc: AlgebraDescriptor) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    dim = desc.dim
    eye = np.eye(dim)
    if desc.family is Family.REAL_SYM:
        basis = _real_to_rep(eye, desc.size)
        prods = np.einsum("aik,bkj->abij", basis, basis)
        table = _real_from_rep(_pairwise_sym(prods), desc.size)
        gram = np.ones(dim)
        unit_coords = _real_from_rep(np.eye(desc.size), desc.size)
    elif desc.family is Family.COMPLEX_HERM:
        basis = _complex_to_rep(eye, desc.size)
        prods = np.einsum("aik,bkj->abij", basis, basis)
        table = _complex_from_rep(_pairwise_sym(prods), desc.size)
        gram = np.ones(dim)
        unit_coords = _complex_from_rep(np.eye(desc.size, dtype=complex), desc.size)
    elif desc.family is Family.QUAT_HERM:
        basis = hc.embed_quat_matrix(_quat_to_rep(eye, desc.size))
        prods = np.einsum("aik,bkj->abij", basis, basis)
        sym = hc.extract_quat_matrix(_pairwise_sym(prods))
        table = _quat_from_rep(sym, desc.size)
        gram = np.ones(dim)
        unit_coords = np.concatenate(
            [np.ones(desc.size), np.zeros(dim - desc.size)]
        )
    elif desc.family is Family.SPIN:
        table = np.zeros((dim, dim, dim))
        table[0, :, :] = np.eye(dim)
        table[:, 0, :] = np.eye(dim)
        for i in range(1, dim):
            table[i, i, 0] = 1.0
        gram = np.full(dim, 2.0)
        unit_coords = np.zeros(dim)
        unit_coords[0] = 1.0
    elif desc.family is Family.ALBERT:
        basis = _albert_to_rep(eye)
        prods = hc.oct_matrix_multiply(basis[:, None], basis[None, :])
        table = _albert_from_rep(_pairwise_sym(prods))
        gram = np.ones(dim)
        unit_coords = np.concatenate([np.ones(3), np.zeros(24)])
    else:
        raise ValueError(f"no direct table for family {desc.family}")
    return table, gram, unit_coords


def _context(desc: AlgebraDescriptor) -> _Context:
    ctx = _CONTEXT_CACHE.get(desc)
    if ctx is not None:
        return ctx
    if desc.family is Family.SUM:
        parts = [_context(s) for s in desc.summands]
        dim = desc.dim
        table = np.zeros((dim, dim, dim))
        gram = np.zeros(dim)
        unit_coords = np.zeros(dim)
        slices = []
        start = 0
        for part in parts:
            d = part.descriptor.dim
            sl = slice(start, start + d)
            table[sl, sl, sl] = part.table
            gram[sl] = part.gram
            unit_coords[sl] = part.unit_coords
            slices.append(sl)
            start += d
        ctx = _Context(desc, table, gram, unit_coords, tuple(slices))
    else:
        table, gram, unit_coords = _build_table(desc)
        ctx = _Context(desc, table, gram, unit_coords)
    _CONTEXT_CACHE[desc] = ctx
    return ctx


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------


def unit(algebra: AlgebraDescriptor) -> Element:
    return Element(algebra, _context(algebra).unit_coords.copy())


def basis_elements(algebra: AlgebraDescriptor) -> list[Element]:
    return [Element(algebra, row) for row in np.eye(algebra.dim)]


def jordan_product(a: Element, b: Element) -> Element:
    _require_same_algebra(a, b)
    table = _context(a.algebra).table
    return Element(a.algebra, _product_coords(table, a.coords, b.coords))


def _product_coords(table: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.einsum("i,j,ijk->k", x, y, table)


def _product_batch(table: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    return np.einsum("ni,nj,ijk->nk", xs, ys, table)


def _left_mult_matrix(table: np.ndarray, x: np.ndarray) -> np.ndarray:
    # L_x[k, j] = sum_i x_i T[i, j, k]
    return np.tensordot(x, table, axes=(0, 0)).T


def left_mult_operator(a: Element) -> LinearOperator:
    mat = _left_mult_matrix(_context(a.algebra).table, a.coords)
    return LinearOperator(mat, a.algebra, a.algebra)


def trace_form(a: Element, b: Element) -> float:
    _require_same_algebra(a, b)
    gram = _context(a.algebra).gram
    return float(np.sum(a.coords * gram * b.coords))


def trace_of(a: Element) -> float:
    ctx = _context(a.algebra)
    return float(np.sum(a.coords * ctx.gram * ctx.unit_coords))


def norm(a: Element) -> float:
    return float(np.sqrt(max(trace_form(a, a), 0.0)))


def quadratic_representation(a: Element) -> LinearOperator:
    """P(a) = 2 L_a^2 - L_{a o a}, the quadratic representation of a."""
    ctx = _context(a.algebra)
    left = _left_mult_matrix(ctx.table, a.coords)
    left_sq = _left_mult_matrix(ctx.table, _product_coords(ctx.table, a.coords, a.coords))
    return LinearOperator(2.0 * left @ left - left_sq, a.algebra, a.algebra)


def random_element(
    algebra: AlgebraDescriptor, seed: int | np.random.Generator = 0
) -> Element:
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    return Element(algebra, rng.standard_normal(algebra.dim))


def check_jordan_identity(a: Element, b: Element) -> float:
    """Relative residual of a^2 o (a o b) = a o (a^2 o b)."""
    _require_same_algebra(a, b)
    ctx = _context(a.algebra)
    t = ctx.table
    asq = _product_coords(t, a.coords, a.coords)
    lhs = _product_coords(t, asq, _product_coords(t, a.coords, b.coords))
    rhs = _product_coords(t, a.coords, _product_coords(t, asq, b.coords))
    gap = np.sqrt(np.sum((lhs - rhs) ** 2 * ctx.gram))
    return float(gap / (1.0 + norm(a) ** 3 * norm(b)))


def check_formal_reality(a: Element, b: Element, tol: float = 1e-9) -> bool:
    """Sum-of-squares positivity: a^2 + b^2 = 0 only if a = b = 0.

    Uses the trace-form route: tr(a^2 + b^2) = <a, a> + <b, b> exactly, and
    ||x|| >= tr(x) / sqrt(rank) for any x, so the norm of a^2 + b^2 is
    bounded below by the squared norms of a and b.
    """
    _require_same_algebra(a, b)
    ctx = _context(a.algebra)
    t = ctx.table
    ssq = _product_coords(t, a.coords, a.coords) + _product_coords(
        t, b.coords, b.coords
    )
    total = trace_form(a, a) + trace_form(b, b)
    if total <= tol:
        return True
    bound = total / np.sqrt(a.algebra.rank)
    return float(np.sqrt(np.sum(ssq**2 * ctx.gram))) >= bound * (1.0 - 1e-12) - tol


# ---------------------------------------------------------------------------
# Batched residual suites. These drive both the test suite and the CLI
# certificates, so they are written against coordinate arrays directly.
# ---------------------------------------------------------------------------


def jordan_identity_residuals(
    algebra: AlgebraDescriptor, n_pairs: int, seed: int = 0
) -> np.ndarray:
    ctx = _context(algebra)
    rng = np.random.default_rng(seed)
    xs = rng.standard_normal((n_pairs, algebra.dim))
    ys = rng.standard_normal((n_pairs, algebra.dim))
    t = ctx.table
    asq = _product_batch(t, xs, xs)
    lhs = _product_batch(t, asq, _product_batch(t, xs, ys))
    rhs = _product_batch(t, xs, _product_batch(t, asq, ys))
    gaps = np.sqrt(np.sum((lhs - rhs) ** 2 * ctx.gram, axis=1))
    nx = np.sqrt(np.sum(xs**2 * ctx.gram, axis=1))
    ny = np.sqrt(np.sum(ys**2 * ctx.gram, axis=1))
    return gaps / (1.0 + nx**3 * ny)


def commutativity_residuals(
    algebra: AlgebraDescriptor, n_pairs: int, seed: int = 0
) -> np.ndarray:
    ctx = _context(algebra)
    rng = np.random.default_rng(seed)
    xs = rng.standard_normal((n_pairs, algebra.dim))
    ys = rng.standard_normal((n_pairs, algebra.dim))
    gaps = _product_batch(ctx.table, xs, ys) - _product_batch(ctx.table, ys, xs)
    nx = np.sqrt(np.sum(xs**2 * ctx.gram, axis=1))
    ny = np.sqrt(np.sum(ys**2 * ctx.gram, axis=1))
    return np.sqrt(np.sum(gaps**2 * ctx.gram, axis=1)) / (1.0 + nx * ny)


def unit_law_residuals(
    algebra: AlgebraDescriptor, n_samples: int, seed: int = 0
) -> np.ndarray:
    ctx = _context(algebra)
    rng = np.random.default_rng(seed)
    xs = rng.standard_normal((n_samples, algebra.dim))
    us = np.broadcast_to(ctx.unit_coords, xs.shape)
    gaps = _product_batch(ctx.table, us.copy(), xs) - xs
    nx = np.sqrt(np.sum(xs**2 * ctx.gram, axis=1))
    return np.sqrt(np.sum(gaps**2 * ctx.gram, axis=1)) / (1.0 + nx)


def trace_associativity_residuals(
    algebra: AlgebraDescriptor, n_triples: int, seed: int = 0
) -> np.ndarray:
    """Residuals of <a o b, c> = <b, a o c> on random triples."""
    ctx = _context(algebra)
    rng = np.random.default_rng(seed)
    xs = rng.standard_normal((n_triples, algebra.dim))
    ys = rng.standard_normal((n_triples, algebra.dim))
    zs = rng.standard_normal((n_triples, algebra.dim))
    lhs = np.sum(_product_batch(ctx.table, xs, ys) * ctx.gram * zs, axis=1)
    rhs = np.sum(ys * ctx.gram * _product_batch(ctx.table, xs, zs), axis=1)
    scale = 1.0 + np.sqrt(
        np.sum(xs**2 * ctx.gram, axis=1)
        * np.sum(ys**2 * ctx.gram, axis=1)
        * np.sum(zs**2 * ctx.gram, axis=1)
    )
    return np.abs(lhs - rhs) / scale


# ---------------------------------------------------------------------------
# Matrix representations for the matrix families and the octonionic algebra.
# ---------------------------------------------------------------------------


def to_matrix(a: Element) -> np.ndarray:
    """Matrix representation of a: real or complex (n, n), quaternionic
    (n, n, 4), octonionic (3, 3, 8). Spin factors and sums have none."""
    desc = a.algebra
    if desc.family is Family.REAL_SYM:
        return _real_to_rep(a.coords, desc.size)
    if desc.family is Family.COMPLEX_HERM:
        return _complex_to_rep(a.coords, desc.size)
    if desc.family is Family.QUAT_HERM:
        return _quat_to_rep(a.coords, desc.size)
    if desc.family is Family.ALBERT:
        return _albert_to_rep(a.coords)
    raise ValueError(f"family {desc.family.value!r} has no matrix representation")


def from_matrix(algebra: AlgebraDescriptor, mat: np.ndarray) -> Element:
    if algebra.family is Family.REAL_SYM:
        return Element(algebra, _real_from_rep(np.asarray(mat, dtype=float), algebra.size))
    if algebra.family is Family.COMPLEX_HERM:
        return Element(algebra, _complex_from_rep(np.asarray(mat, dtype=complex), algebra.size))
    if algebra.family is Family.QUAT_HERM:
        return Element(algebra, _quat_from_rep(np.asarray(mat, dtype=float), algebra.size))
    if algebra.family is Family.ALBERT:
        return Element(algebra, _albert_from_rep(np.asarray(mat, dtype=float)))
    raise ValueError(f"family {algebra.family.value!r} has no matrix representation")


# ---------------------------------------------------------------------------
# Descriptor serialization: dict records and a compact one-line text form.
# ---------------------------------------------------------------------------


def descriptor_to_record(desc: AlgebraDescriptor) -> dict:
    if desc.family is Family.SUM:
        return {
            "family": desc.family.value,
            "summands": [descriptor_to_record(s) for s in desc.summands],
        }
    return {"family": desc.family.value, "size": desc.size}


def record_to_descriptor(record: dict) -> AlgebraDescriptor:
    if not isinstance(record, dict) or "family" not in record:
        raise ValueError(f"malformed algebra record: {record!r}")
    family = record["family"]
    if family == Family.SUM.value:
        summands = record.get("summands")
        if not isinstance(summands, list) or not summands:
            raise ValueError("direct sum record requires a non-empty summand list")
        return make_algebra(family, summands=tuple(record_to_descriptor(s) for s in summands))
    return make_algebra(family, record.get("size"))


def format_descriptor(desc: AlgebraDescriptor) -> str:
    if desc.family is Family.SUM:
        inner = ", ".join(format_descriptor(s) for s in desc.summands)
        return f"sum({inner})"
    return f"{desc.family.value} {desc.size}"


def parse_descriptor(text: str) -> AlgebraDescriptor:
    text = text.strip()
    if text.startswith("sum(") and text.endswith(")"):
        inner = text[4:-1]
        parts: list[str] = []
        depth = 0
        current = ""
        for ch in inner:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "," and depth == 0:
                parts.append(current)
                current = ""
            else:
                current += ch
        if current.strip():
            parts.append(current)
        return direct_sum(*(parse_descriptor(p) for p in parts))
    pieces = text.split()
    if len(pieces) == 1 and pieces[0] == Family.ALBERT.value:
        return make_algebra(Family.ALBERT)
    if len(pieces) != 2:
        raise ValueError(f"cannot parse algebra descriptor from {text!r}")
    try:
        size = int(pieces[1])
    except ValueError:
        raise ValueError(f"bad size in algebra descriptor {text!r}") from None
    return make_algebra(pieces[0], size)


@lru_cache(maxsize=None)
def _gram_diagonal(desc: AlgebraDescriptor) -> np.ndarray:
    return _context(desc).gram
