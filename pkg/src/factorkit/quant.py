"""Completely positive maps between finite-dimensional Hilbert spaces.

A map ``A -> B`` is stored by its Choi matrix

    C = sum_ij |i><j| (x) Phi(|i><j|)

of size ``(dA*dB) x (dA*dB)``, with row index ``i * dB + b``.  A Kraus
operator ``K`` (``dB x dA``) contributes ``vec(K) vec(K)^dagger`` where
``vec(K)[i * dB + b] = K[b, i]``.  Trace preservation is not assumed.

Pure maps are conjugations ``rho -> f rho f^dagger``; numerically they are
the maps whose Choi matrix has rank one.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
import scipy.linalg

from .core import (
    DEFAULT_TOL,
    ClassFlags,
    FactorkitError,
    FactorPair,
    InvalidMorphism,
    ObjectMismatch,
    check_dim,
)

theory = "quant"


class NotCompletelyPositive(InvalidMorphism):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def vec(k: np.ndarray) -> np.ndarray:
    return np.asarray(k).T.reshape(-1)


def unvec(v: np.ndarray, dom: int, cod: int) -> np.ndarray:
    return np.asarray(v).reshape(dom, cod).T


class CPMap:
    """A completely positive map, canonically represented by its Choi matrix."""

    theory = theory

    def __init__(self, dom: int, cod: int, choi, *, tol: float = DEFAULT_TOL, check: bool = True):
        self.dom = check_dim(dom, theory)
        self.cod = check_dim(cod, theory)
        choi = _frozen(choi)
        n = dom * cod
        if choi.shape != (n, n):
            raise ObjectMismatch(f"Choi matrix of a {dom}->{cod} map must be {n}x{n}, got {choi.shape}")
        if check:
            scale = max(1.0, float(np.max(np.abs(choi), initial=0.0)))
            if np.max(np.abs(choi - choi.conj().T), initial=0.0) > tol * scale:
                raise NotCompletelyPositive("Choi matrix is not Hermitian")
            if np.linalg.eigvalsh(choi).min() < -tol * scale:
                raise NotCompletelyPositive("Choi matrix is not positive semidefinite")
        self.choi = choi

    def __repr__(self):
        return f"CPMap({self.dom}->{self.cod}, rank={choi_rank(self)})"

    @cached_property
    def _eigh(self):
        w, v = np.linalg.eigh((self.choi + self.choi.conj().T) / 2)
        return w, v

    @cached_property
    def kraus(self) -> "KrausSet":
        """A minimal Kraus decomposition at the default tolerance."""
        return kraus_from_choi(self)

    def __call__(self, rho):
        return apply(self, rho)


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Operators ``K_i`` (each ``cod x dom``); the ancilla is their number."""

    dom: int
    cod: int
    ops: tuple

    def __post_init__(self):
        check_dim(self.dom, theory)
        check_dim(self.cod, theory)
        ops = tuple(_frozen(k) for k in self.ops)
        for k in ops:
            if k.shape != (self.cod, self.dom):
                raise ObjectMismatch(f"Kraus operator of shape {k.shape}, expected {(self.cod, self.dom)}")
        object.__setattr__(self, "ops", ops)

    @property
    def ancilla(self) -> int:
        return len(self.ops)

    def stacked(self) -> np.ndarray:
        """Columns are the vectorised operators: shape ``(dom*cod, ancilla)``."""
        if not self.ops:
            return np.zeros((self.dom * self.cod, 0), dtype=complex)
        return np.stack([vec(k) for k in self.ops], axis=1)

    def pure_part(self) -> np.ndarray:
        """``P = sum_i K_i (id (x) <i|)``: the map ``A (x) C -> B``."""
        r = self.ancilla
        P = np.zeros((self.cod, self.dom * r), dtype=complex)
        for i, k in enumerate(self.ops):
            P[:, i::r] = k
        return P

    def isometry_part(self) -> np.ndarray:
        """``V = sum_i K_i (x) |i>``: the map ``A -> B (x) C``."""
        r = self.ancilla
        V = np.zeros((self.cod * r, self.dom), dtype=complex)
        for i, k in enumerate(self.ops):
            V[i::r, :] = k
        return V


@dataclass(frozen=True, eq=False)
class PureMap:
    """A linear map ``dom -> cod``; it acts on states by conjugation."""

    dom: int
    cod: int
    matrix: np.ndarray

    def __post_init__(self):
        check_dim(self.dom, theory)
        check_dim(self.cod, theory)
        m = _frozen(self.matrix)
        if m.shape != (self.cod, self.dom):
            raise ObjectMismatch(f"matrix of shape {m.shape}, expected {(self.cod, self.dom)}")
        object.__setattr__(self, "matrix", m)


def choi_from_kraus(k: KrausSet) -> CPMap:
    X = k.stacked()
    return CPMap(k.dom, k.cod, X @ X.conj().T, check=False)


def _fix_phase(v: np.ndarray, tol: float) -> np.ndarray:
    idx = int(np.argmax(np.abs(v) > tol * np.max(np.abs(v))))
    return v * (abs(v[idx]) / v[idx])


def kraus_from_choi(c: CPMap, tol: float = DEFAULT_TOL) -> KrausSet:
    """Minimal Kraus set from the eigendecomposition of the Choi matrix.

    Eigenvalues above ``tol * lambda_max`` are kept, so the ancilla equals
    the numerical Choi rank.  Each operator's phase is fixed so that its
    first significant entry is real and positive.
    """
    w, v = c._eigh
    lmax = float(w.max(initial=0.0))
    ops = []
    if lmax > 0:
        for idx in np.argsort(-w, kind="stable"):
            lam = w[idx]
            if lam <= tol * lmax:
                break
            vk = _fix_phase(v[:, idx], tol) * np.sqrt(lam)
            ops.append(unvec(vk, c.dom, c.cod))
    return KrausSet(c.dom, c.cod, tuple(ops))


def choi_rank(c: CPMap, tol: float = DEFAULT_TOL) -> int:
    w = c._eigh[0]
    lmax = float(w.max(initial=0.0))
    if lmax <= 0:
        return 0
    return int(np.sum(w > tol * lmax))


def from_kraus(ops: Sequence, dom: int | None = None, cod: int | None = None) -> CPMap:
    ops = [np.asarray(k, dtype=complex) for k in ops]
    if dom is None or cod is None:
        cod, dom = ops[0].shape
    return choi_from_kraus(KrausSet(dom, cod, tuple(ops)))


def from_linear(f) -> CPMap:
    """The conjugation map ``rho -> f rho f^dagger`` of a linear map ``f``."""
    if isinstance(f, PureMap):
        f = f.matrix
    f = np.asarray(f, dtype=complex)
    cod, dom = f.shape
    v = vec(f)
    return CPMap(dom, cod, np.outer(v, v.conj()), check=False)


def apply(c: CPMap, rho) -> np.ndarray:
    """``sum_i K_i rho K_i^dagger`` over the minimal Kraus set."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (c.dom, c.dom):
        raise ObjectMismatch(f"input must be {c.dom}x{c.dom}, got {rho.shape}")
    out = np.zeros((c.cod, c.cod), dtype=complex)
    for k in c.kraus.ops:
        out += k @ rho @ k.conj().T
    return out


def apply_choi(c: CPMap, rho) -> np.ndarray:
    """``Phi(rho)[b, b'] = sum_ij rho[i, j] C[(i, b), (j, b')]``, without any decomposition."""
    rho = np.asarray(rho, dtype=complex)
    blocks = c.choi.reshape(c.dom, c.cod, c.dom, c.cod)
    return np.einsum("ij,ibjc->bc", rho, blocks)


def compose(g: CPMap, f: CPMap) -> CPMap:
    if f.cod != g.dom:
        raise ObjectMismatch(f"cannot compose: cod(f)={f.cod} but dom(g)={g.dom}")
    ops = [kg @ kf for kg in g.kraus.ops for kf in f.kraus.ops]
    if not ops:
        return CPMap(f.dom, g.cod, np.zeros((f.dom * g.cod,) * 2), check=False)
    return choi_from_kraus(KrausSet(f.dom, g.cod, tuple(ops)))


def tensor(f: CPMap, g: CPMap) -> CPMap:
    ops = [np.kron(kf, kg) for kf in f.kraus.ops for kg in g.kraus.ops]
    dom, cod = f.dom * g.dom, f.cod * g.cod
    if not ops:
        return CPMap(dom, cod, np.zeros((dom * cod,) * 2), check=False)
    return choi_from_kraus(KrausSet(dom, cod, tuple(ops)))


def adjoint(c: CPMap) -> CPMap:
    """The map ``B -> A`` with Kraus operators ``K_i^dagger``."""
    ops = tuple(k.conj().T for k in c.kraus.ops)
    if not ops:
        return CPMap(c.cod, c.dom, np.zeros((c.dom * c.cod,) * 2), check=False)
    return choi_from_kraus(KrausSet(c.cod, c.dom, ops))


def identity(a: int) -> CPMap:
    return from_linear(np.eye(a))


def swap(a: int, b: int) -> CPMap:
    s = np.zeros((a * b, a * b))
    for i in range(a):
        for j in range(b):
            s[j * a + i, i * b + j] = 1
    return from_linear(s)


def mix(a: int) -> CPMap:
    """The state with identity density matrix."""
    return CPMap(1, a, np.eye(a), check=False)


def discard(a: int) -> CPMap:
    """The trace."""
    return CPMap(a, 1, np.eye(a), check=False)


def equal(f: CPMap, g: CPMap, tol: float = DEFAULT_TOL) -> bool:
    if (f.dom, f.cod) != (g.dom, g.cod):
        return False
    return float(np.max(np.abs(f.choi - g.choi), initial=0.0)) <= tol


def minimal_dilation(c: CPMap, tol: float = DEFAULT_TOL) -> KrausSet:
    return kraus_from_choi(c, tol)


def _numerical_rank(s: np.ndarray, tol: float) -> int:
    if s.size == 0 or s[0] <= 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def is_minimal(k: KrausSet, tol: float = DEFAULT_TOL) -> bool:
    """Whether the operators are linearly independent (full column rank when stacked)."""
    if k.ancilla == 0:
        return True
    X = k.stacked()
    if k.ancilla > X.shape[0]:
        return False
    s = np.linalg.svd(X, compute_uv=False)
    return _numerical_rank(s, tol) == k.ancilla


def _invertible(P: np.ndarray, tol: float) -> bool:
    if P.shape[0] != P.shape[1] or P.shape[0] == 0:
        return False
    s = np.linalg.svd(P, compute_uv=False)
    return bool(s[-1] > tol * s[0])


def is_mixing(c: CPMap, tol: float = DEFAULT_TOL) -> bool:
    """A simple mixing map: the minimal pure part ``A (x) C -> B`` is invertible."""
    return _invertible(minimal_dilation(c, tol).pure_part(), tol)


def is_discarding(c: CPMap, tol: float = DEFAULT_TOL) -> bool:
    return is_mixing(adjoint(c), tol)


def classify(c: CPMap, tol: float = DEFAULT_TOL) -> ClassFlags:
    pure = choi_rank(c, tol) <= 1
    return ClassFlags(
        pure=pure,
        copure=pure,
        mixing=is_mixing(c, tol),
        discarding=is_discarding(c, tol),
    )


def _padded_dilation(c: CPMap) -> KrausSet:
    k = minimal_dilation(c)
    if k.ancilla == 0:
        # the zero map still needs a nonzero-dimensional ancilla
        k = KrausSet(c.dom, c.cod, (np.zeros((c.cod, c.dom)),))
    return k


def purify(c: CPMap) -> FactorPair:
    """``c = F(P) . (id_A (x) mix_C)`` with ``C`` the minimal ancilla."""
    k = _padded_dilation(c)
    right = from_linear(k.pure_part())
    left = tensor(identity(c.dom), mix(k.ancilla))
    return FactorPair(left=left, right=right, ancilla=k.ancilla)


def copurify(c: CPMap) -> FactorPair:
    """``c = (id_B (x) discard_C) . F(V)`` with ``V: A -> B (x) C``."""
    k = _padded_dilation(c)
    left = from_linear(k.isometry_part())
    right = tensor(identity(c.cod), discard(k.ancilla))
    return FactorPair(left=left, right=right, ancilla=k.ancilla)


def extend_dilation(p: KrausSet, p2: KrausSet, tol: float = 1e-8) -> np.ndarray:
    """Coisometry ``j: C' -> C`` with ``P (id (x) j) = P'`` for two dilations of one map.

    ``p`` has ancilla ``C`` and ``p2`` ancilla ``C'`` with ``dim C <= dim C'``.
    Both are expressed over a common minimal dilation, ``X = M G`` and
    ``X' = M G'`` with ``G``, ``G'`` coisometries; the isometry
    ``W: C -> C'`` agrees with ``G'^dagger G`` on the image of ``G^dagger``
    and maps its orthogonal complement isometrically into the complement of
    the image of ``G'^dagger``.  The result is ``j = W^dagger``.
    """
    if (p.dom, p.cod) != (p2.dom, p2.cod):
        raise ObjectMismatch("dilations have different domain or codomain")
    if p.ancilla > p2.ancilla:
        raise ObjectMismatch(f"need dim C <= dim C', got {p.ancilla} > {p2.ancilla}")
    c1, c2 = choi_from_kraus(p), choi_from_kraus(p2)
    scale = max(1.0, float(np.max(np.abs(c1.choi), initial=0.0)))
    if not equal(c1, c2, tol * scale):
        raise FactorkitError("the two Kraus sets do not dilate the same map")

    M = minimal_dilation(c1).stacked()
    n, m = p.ancilla, p2.ancilla
    if M.shape[1] == 0:
        G = np.zeros((0, n), dtype=complex)
        G2 = np.zeros((0, m), dtype=complex)
    else:
        Mp = np.linalg.pinv(M)
        G = Mp @ p.stacked()
        G2 = Mp @ p2.stacked()
    Q = scipy.linalg.null_space(G) if G.shape[0] else np.eye(n, dtype=complex)
    Q2 = scipy.linalg.null_space(G2) if G2.shape[0] else np.eye(m, dtype=complex)
    Q2 = Q2[:, : Q.shape[1]]
    W = G2.conj().T @ G + Q2 @ Q.conj().T
    return W.conj().T


def dilation_residual(p: KrausSet, p2: KrausSet, j: np.ndarray) -> float:
    """Max-norm of ``P (id (x) j) - P'``, compared on the vectorised operators."""
    return float(np.max(np.abs(p.stacked() @ j - p2.stacked()), initial=0.0))


def coisometry_residual(j: np.ndarray) -> float:
    j = np.asarray(j)
    return float(np.max(np.abs(j @ j.conj().T - np.eye(j.shape[0])), initial=0.0))
