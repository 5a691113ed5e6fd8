"""Unitary representations, their extension to algebra matrices, and spectra.

Four built-in representations: trivial (degree 1), identical (complex-unit
groups, degree 1), permutation (symmetric groups, degree n), and the left
regular representation (any group, degree |G|).  All but the identical
representation of a cyclic group of order outside {1, 2, 4} have exact
Gaussian-rational images; those support exact matrix identities alongside
the floating-point path used for spectra.

Eigenvalues of Hermitian matrices come from an in-repo cyclic Jacobi
iteration; numpy supplies only array storage and vectorized updates.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from .algebra import GAMatrix, GroupAlgebraElement
from .groups import Group, GroupElement
from .scalars import GaussianRational

REP_KINDS = ("trivial", "identical", "permutation", "regular")

_INT64_LIMIT = 2**62


class ExactComplexMatrix:
    """A dense complex matrix with exact Gaussian-rational entries.

    Stored as integer numerator arrays over one positive denominator, so
    products and comparisons are exact.  int64 arithmetic is used while the
    value bounds allow it, with an object-dtype fallback for big integers.
    """

    __slots__ = ("re", "im", "den", "shape", "_bound")

    def __init__(self, re: np.ndarray, im: np.ndarray, den: int):
        if re.shape != im.shape:
            raise ValueError("numerator arrays must share a shape")
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.re = re
        self.im = im
        self.den = int(den)
        self.shape = re.shape
        self._bound = int(max(abs(re).max(initial=0), abs(im).max(initial=0)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[GaussianRational]]) -> "ExactComplexMatrix":
        den = 1
        for row in rows:
            for v in row:
                den = math.lcm(den, Fraction(v.re).denominator, Fraction(v.im).denominator)
        n, m = len(rows), len(rows[0])
        re = np.empty((n, m), dtype=object)
        im = np.empty((n, m), dtype=object)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                re[i, j] = int(Fraction(v.re) * den)
                im[i, j] = int(Fraction(v.im) * den)
        return cls(*_narrow(re, im), den).reduced()

    def reduced(self) -> "ExactComplexMatrix":
        g = self.den
        for arr in (self.re, self.im):
            for v in arr.flat:
                g = math.gcd(g, int(v))
                if g == 1:
                    return self
        if g <= 1:
            return self
        return ExactComplexMatrix(*_narrow(self.re // g, self.im // g), self.den // g)

    def __matmul__(self, other: "ExactComplexMatrix") -> "ExactComplexMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        bound = self._bound * other._bound * self.shape[1] * 2
        a_re, a_im = self.re, self.im
        b_re, b_im = other.re, other.im
        if bound >= _INT64_LIMIT or a_re.dtype == object or b_re.dtype == object:
            a_re, a_im = a_re.astype(object), a_im.astype(object)
            b_re, b_im = b_re.astype(object), b_im.astype(object)
        re = a_re.dot(b_re) - a_im.dot(b_im)
        im = a_re.dot(b_im) + a_im.dot(b_re)
        return ExactComplexMatrix(*_narrow(re, im), self.den * other.den).reduced()

    def __sub__(self, other: "ExactComplexMatrix") -> "ExactComplexMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        d = math.lcm(self.den, other.den)
        sa, sb = d // self.den, d // other.den
        re = self.re.astype(object) * sa - other.re.astype(object) * sb
        im = self.im.astype(object) * sa - other.im.astype(object) * sb
        return ExactComplexMatrix(*_narrow(re, im), d).reduced()

    def __eq__(self, other):
        if not isinstance(other, ExactComplexMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b = self.reduced(), other.reduced()
        return (
            a.den == b.den
            and np.array_equal(a.re.astype(object), b.re.astype(object))
            and np.array_equal(a.im.astype(object), b.im.astype(object))
        )

    def __hash__(self):
        return hash(self.key())

    def is_zero(self) -> bool:
        return not self.re.any() and not self.im.any()

    def max_modulus(self) -> float:
        re = self.re.astype(float) / self.den
        im = self.im.astype(float) / self.den
        return float(np.sqrt(re * re + im * im).max(initial=0.0))

    def to_complex(self) -> np.ndarray:
        return (self.re.astype(float) + 1j * self.im.astype(float)) / self.den

    def key(self) -> tuple:
        a = self.reduced()
        return (a.shape, a.den,
                tuple(int(v) for v in a.re.flat),
                tuple(int(v) for v in a.im.flat))


def _narrow(re: np.ndarray, im: np.ndarray):
    """Use int64 storage when every value fits comfortably."""
    if re.dtype != object:
        return re, im
    bound = 0
    for arr in (re, im):
        for v in arr.flat:
            bound = max(bound, abs(int(v)))
    if bound < _INT64_LIMIT:
        return re.astype(np.int64), im.astype(np.int64)
    return re, im


class Representation:
    """A unitary representation of a finite group, extended to the algebra.

    Validated exhaustively on construction: the images must form a group
    homomorphism and be unitary.  `exact` marks representations whose images
    are Gaussian-rational, enabling exact represented identities.
    """

    def __init__(self, group: Group, kind: str, images: np.ndarray,
                 exact_images: Optional[List[ExactComplexMatrix]] = None):
        self.group = group
        self.kind = kind
        self.degree = int(images.shape[1])
        self.images = images  # (|G|, k, k) complex128
        self.exact_images = exact_images
        self.exact = exact_images is not None
        self._validate()
        self._key_cache: dict = {}

    def _validate(self):
        n = self.group.order
        imgs = self.images
        if imgs.shape != (n, self.degree, self.degree):
            raise ValueError("image array has the wrong shape")
        # homomorphism on all pairs, one batch per left factor
        for a in range(n):
            products = imgs[a] @ imgs
            expected = imgs[self.group.table[a]]
            err = np.abs(products - expected).max()
            if err > 1e-10:
                b = int(np.argmax(np.abs(products - expected).reshape(n, -1).max(axis=1)))
                raise ValueError(
                    f"not a homomorphism: image({self.group.labels[a]})*"
                    f"image({self.group.labels[b]}) differs from the image of "
                    f"the product by {err:.2e}"
                )
        # unitarity
        eye = np.eye(self.degree)
        for a in range(n):
            uerr = np.abs(imgs[a] @ imgs[a].conj().T - eye).max()
            if uerr > 1e-12:
                raise ValueError(
                    f"image of {self.group.labels[a]} is not unitary (error {uerr:.2e})"
                )
        # cross-check the exact images at paper scale
        if self.exact_images is not None and n <= 24:
            for a in range(n):
                for b in range(n):
                    ab = self.group.op_index(a, b)
                    if self.exact_images[a] @ self.exact_images[b] != self.exact_images[ab]:
                        raise ValueError("exact images are not a homomorphism")

    # -- application --------------------------------------------------------

    def image(self, g: GroupElement) -> np.ndarray:
        if g.group != self.group:
            raise ValueError("element of a different group")
        return self.images[g.index]

    def image_exact(self, g: GroupElement) -> ExactComplexMatrix:
        self._require_exact()
        return self.exact_images[g.index]

    def apply(self, x) -> np.ndarray:
        """Extend linearly to the group algebra: sum of coeff * image."""
        if isinstance(x, GroupElement):
            return self.image(x).copy()
        if x.group != self.group:
            raise ValueError("value over a different group")
        out = np.zeros((self.degree, self.degree), dtype=complex)
        for idx, c in x.terms.items():
            out += c.to_complex() * self.images[idx]
        return out

    def apply_exact(self, x: GroupAlgebraElement) -> ExactComplexMatrix:
        self._require_exact()
        if x.group != self.group:
            raise ValueError("value over a different group")
        k = self.degree
        rows = [[GaussianRational(0)] * k for _ in range(k)]
        for idx, c in x.terms.items():
            img = self.exact_images[idx]
            den = img.den
            for i in range(k):
                for j in range(k):
                    w = GaussianRational(
                        Fraction(int(img.re[i, j]), den), Fraction(int(img.im[i, j]), den)
                    )
                    if not w.is_zero():
                        rows[i][j] = rows[i][j] + c * w
        return ExactComplexMatrix.from_rows(rows)

    def apply_mat(self, a: GAMatrix) -> np.ndarray:
        """Blockwise extension: an (n*k) x (m*k) complex matrix."""
        if a.group != self.group:
            raise ValueError("matrix over a different group")
        k = self.degree
        out = np.zeros((a.rows * k, a.cols * k), dtype=complex)
        for i in range(a.rows):
            for j in range(a.cols):
                e = a.entries[i][j]
                if e.terms:
                    out[i * k:(i + 1) * k, j * k:(j + 1) * k] = self.apply(e)
        return out

    def apply_mat_exact(self, a: GAMatrix) -> ExactComplexMatrix:
        self._require_exact()
        if a.group != self.group:
            raise ValueError("matrix over a different group")
        k = self.degree
        den = 1
        blocks = {}
        for i in range(a.rows):
            for j in range(a.cols):
                e = a.entries[i][j]
                if e.terms:
                    blk = self.apply_exact(e)
                    blocks[(i, j)] = blk
                    den = math.lcm(den, blk.den)
        re = np.zeros((a.rows * k, a.cols * k), dtype=object)
        im = np.zeros((a.rows * k, a.cols * k), dtype=object)
        for (i, j), blk in blocks.items():
            s = den // blk.den
            re[i * k:(i + 1) * k, j * k:(j + 1) * k] = blk.re.astype(object) * s
            im[i * k:(i + 1) * k, j * k:(j + 1) * k] = blk.im.astype(object) * s
        return ExactComplexMatrix(*_narrow(re, im), den).reduced()

    def image_key(self, x: GroupAlgebraElement):
        """A hashable key equal for algebra values with equal images (exact reps)."""
        self._require_exact()
        h = x._canonical()
        cached = self._key_cache.get(h)
        if cached is None:
            cached = self.apply_exact(x).key()
            self._key_cache[h] = cached
        return cached

    def _require_exact(self):
        if not self.exact:
            raise ValueError(f"representation {self.kind!r} has no exact images here")

    def __repr__(self):
        return f"Representation({self.kind}, degree {self.degree}, {self.group!r})"


def _exact_int_images(mats: Sequence[np.ndarray]) -> List[ExactComplexMatrix]:
    return [
        ExactComplexMatrix(m.astype(np.int64), np.zeros_like(m, dtype=np.int64), 1)
        for m in mats
    ]


def make_rep(group: Group, kind: str) -> Representation:
    """Build one of the built-in unitary representations.

    trivial: every element maps to [1].  identical: complex-unit groups
    only, z^k maps to the k-th power of the primitive root.  permutation:
    symmetric groups only, the natural permutation matrices.  regular: the
    left regular permutation action on the group itself.
    """
    if kind == "trivial":
        imgs = np.ones((group.order, 1, 1), dtype=complex)
        exact = [
            ExactComplexMatrix(np.array([[1]], dtype=np.int64),
                               np.array([[0]], dtype=np.int64), 1)
            for _ in range(group.order)
        ]
        return Representation(group, kind, imgs, exact)

    if kind == "identical":
        if group.kind != "cyclic":
            raise ValueError(
                "the identical representation is defined for complex-unit "
                "(cyclic) groups only"
            )
        n = group.meta["n"]
        if group.unit_values is not None:
            imgs = np.array(
                [[[v.to_complex()]] for v in group.unit_values], dtype=complex
            )
            exact = []
            for v in group.unit_values:
                exact.append(ExactComplexMatrix.from_rows([[v]]))
            return Representation(group, kind, imgs, exact)
        vals = np.exp(2j * np.pi * np.arange(n) / n)
        imgs = vals.reshape(n, 1, 1).astype(complex)
        return Representation(group, kind, imgs, None)

    if kind == "permutation":
        if group.kind != "symmetric":
            raise ValueError(
                "the permutation representation is defined for symmetric groups only"
            )
        k = group.meta["n"]
        mats = []
        for perm in group.meta["perms"]:
            m = np.zeros((k, k), dtype=np.int64)
            for j in range(k):
                m[perm[j], j] = 1
            mats.append(m)
        imgs = np.array(mats, dtype=complex)
        return Representation(group, kind, imgs, _exact_int_images(mats))

    if kind == "regular":
        m = group.order
        mats = []
        for g in range(m):
            p = np.zeros((m, m), dtype=np.int64)
            for h in range(m):
                p[group.op_index(g, h), h] = 1
            mats.append(p)
        imgs = np.array(mats, dtype=complex)
        return Representation(group, kind, imgs, _exact_int_images(mats))

    raise ValueError(f"unknown representation kind {kind!r}; choose from {REP_KINDS}")


def apply_rep(rep: Representation, x) -> np.ndarray:
    return rep.apply(x)


def apply_rep_mat(rep: Representation, a: GAMatrix) -> np.ndarray:
    return rep.apply_mat(a)


# -- Hermitian eigenvalues ---------------------------------------------------

JACOBI_THRESHOLD = 1e-12
_MAX_SWEEPS = 100


def hermitian_spectrum(m, tol: float = 1e-8) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, nondecreasing.

    Uses a cyclic Jacobi iteration with complex rotations; sweeps stop once
    every off-diagonal modulus falls below 1e-12 relative to the matrix
    scale.  Rejects inputs whose asymmetry max|M - M*| exceeds tol.
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("spectrum requires a square matrix")
    asym = float(np.abs(a - a.conj().T).max(initial=0.0))
    if asym > tol:
        raise ValueError(
            f"matrix is not Hermitian: max asymmetry {asym:.3e} exceeds tol {tol:.1e}"
        )
    a = (a + a.conj().T) / 2.0
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])
    scale = max(1.0, float(np.abs(a).max()))
    thresh = JACOBI_THRESHOLD * scale
    for _ in range(_MAX_SWEEPS):
        off = np.abs(a - np.diag(np.diag(a))).max()
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= thresh:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau >= 0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # U restricted to (p, q): diag(1, conj(phase)) then a real rotation
                u = np.array(
                    [[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=complex
                )
                a[:, [p, q]] = a[:, [p, q]] @ u
                a[[p, q], :] = u.conj().T @ a[[p, q], :]
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(np.diag(a).real)
