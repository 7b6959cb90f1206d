"""Walker states and abstract evolutions for 1-D coined quantum walks.

A walker lives on a truncated integer lattice ``x in [-L, L]`` and carries a
two-dimensional internal (coin) state.  Amplitudes are stored as a complex
array of shape ``(2, n_sites)``: row 0 is the left-moving component (coin
``|0>``, horizontal polarization in the optical picture), row 1 the
right-moving one (coin ``|1>``, vertical).

Four walk flavours are provided, all as pure functions returning new states:

- plain discrete-time walk: coin rotation followed by the full conditional
  shift,
- split-step walk: two coin rotations interleaved with the two half-shifts,
- generalized split-step walk: the same with position-dependent coins,
- electric walk: plain walk followed by a position-linear phase.

Truncation is exact in practice as long as no appreciable amplitude reaches
the boundary sites; every shift enforces that guard and raises
:class:`LatticeGuardError` when it would push amplitude off the lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

import numpy as np

__all__ = [
    "GUARD",
    "SYMMETRIC_COIN",
    "LatticeGuardError",
    "WalkerState",
    "CoinParams",
    "CoinTable",
    "WalkSpec",
    "make_state",
    "coin_matrix",
    "u2_matrix",
    "apply_coin",
    "shift_full",
    "shift_minus",
    "shift_plus",
    "electric_phase",
    "step",
    "evolve",
    "probability",
    "moments",
    "spread",
    "coin_block_matrix",
    "shift_minus_matrix",
    "shift_plus_matrix",
    "shift_full_matrix",
    "electric_phase_matrix",
    "split_step_operator",
    "step_operator",
]

#: Largest amplitude magnitude tolerated at a boundary site before a shift.
GUARD = 1e-12

#: Default initial coin state.  For the coin convention used here
#: (:func:`coin_matrix`, an exp(-i*theta*s1) rotation) the equal real
#: superposition is the state whose walk is exactly mirror symmetric: the
#: swap-and-reflect operator s1 ⊗ (x -> -x) commutes with every step and
#: leaves this state fixed.  The circular state (1, i)/sqrt(2), symmetric
#: for real-entried Hadamard-type coins, is maximally *directed* here.
SYMMETRIC_COIN = (1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0))

_TWO_PI = 2.0 * math.pi


class LatticeGuardError(RuntimeError):
    """Amplitude would be pushed off the truncated lattice.

    Carries ``required_half_width`` when a sufficient lattice size is known.
    """

    def __init__(self, message: str, required_half_width: int | None = None):
        super().__init__(message)
        self.required_half_width = required_half_width


@dataclass(frozen=True)
class WalkerState:
    """Immutable coin ⊗ position wavefunction on a truncated lattice."""

    lattice_min: int
    amps: np.ndarray  # (2, n_sites) complex128, read-only

    def __post_init__(self):
        # copy so freezing never flips a caller's buffer to read-only
        amps = np.array(self.amps, dtype=np.complex128)
        if amps.ndim != 2 or amps.shape[0] != 2 or amps.shape[1] < 1:
            raise ValueError(f"amplitudes must have shape (2, n_sites), got {amps.shape}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def n_sites(self) -> int:
        return self.amps.shape[1]

    @property
    def lattice_max(self) -> int:
        return self.lattice_min + self.n_sites - 1

    @property
    def sites(self) -> np.ndarray:
        """Integer site coordinates, aligned with the amplitude columns."""
        return np.arange(self.lattice_min, self.lattice_min + self.n_sites)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def with_amps(self, amps: np.ndarray) -> "WalkerState":
        return WalkerState(self.lattice_min, amps)


@dataclass(frozen=True)
class CoinParams:
    """Angles (chi, xi, eta, theta) of one U(2) coin, all in radians.

    The matrix they parameterize is the ordered product
    ``exp(i*chi) * exp(i*xi*s2) * exp(i*eta*s3) * exp(i*theta*s2)`` with
    ``s2 = [[0,-i],[i,0]]`` and ``s3 = diag(1,-1)``; see :func:`u2_matrix`.
    """

    chi: float = 0.0
    xi: float = 0.0
    eta: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        for name in ("chi", "xi", "eta", "theta"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"coin angle {name} must be finite, got {v}")


def _exp_i_sigma2(angle: float) -> np.ndarray:
    """exp(i*angle*s2) = [[cos a, sin a], [-sin a, cos a]]."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, s], [-s, c]], dtype=np.complex128)


def coin_matrix(theta: float) -> np.ndarray:
    """Balanced coin rotation [[cos t, -i sin t], [-i sin t, cos t]]."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


def u2_matrix(p: CoinParams) -> np.ndarray:
    """U(2) coin from its four angles, in the fixed factor order.

    ``exp(i*chi) * exp(i*xi*s2) * diag(e^{i*eta}, e^{-i*eta}) * exp(i*theta*s2)``.
    The determinant phase is ``exp(2i*chi)``.
    """
    d = np.diag([np.exp(1j * p.eta), np.exp(-1j * p.eta)])
    return np.exp(1j * p.chi) * (_exp_i_sigma2(p.xi) @ d @ _exp_i_sigma2(p.theta))


@dataclass(frozen=True)
class CoinTable:
    """Per-site coin angles covering a whole lattice.

    Stores one angle array per parameter, ordered by ascending site index
    starting at ``lattice_min``.
    """

    lattice_min: int
    chi: np.ndarray
    xi: np.ndarray
    eta: np.ndarray
    theta: np.ndarray

    def __post_init__(self):
        arrays = {}
        n = None
        for name in ("chi", "xi", "eta", "theta"):
            a = np.array(getattr(self, name), dtype=np.float64)
            if a.ndim != 1:
                raise ValueError(f"coin table column {name} must be 1-D")
            if n is None:
                n = a.size
            elif a.size != n:
                raise ValueError("coin table columns must have equal length")
            a.setflags(write=False)
            arrays[name] = a
        if not n:
            raise ValueError("coin table must cover at least one site")
        for name, a in arrays.items():
            object.__setattr__(self, name, a)

    @classmethod
    def homogeneous(cls, params: CoinParams, half_width: int) -> "CoinTable":
        """Repeat one set of angles over the lattice [-half_width, half_width]."""
        n = 2 * half_width + 1
        return cls(
            -half_width,
            np.full(n, params.chi),
            np.full(n, params.xi),
            np.full(n, params.eta),
            np.full(n, params.theta),
        )

    @classmethod
    def random_disorder(cls, half_width: int, rng: np.random.Generator) -> "CoinTable":
        """Disordered table: theta(x) uniform on [0, 2*pi), other angles zero.

        Draws are made in ascending site order so a fixed generator state
        reproduces the table exactly.
        """
        n = 2 * half_width + 1
        thetas = rng.uniform(0.0, _TWO_PI, size=n)
        zeros = np.zeros(n)
        return cls(-half_width, zeros, zeros.copy(), zeros.copy(), thetas)

    @property
    def n_sites(self) -> int:
        return self.chi.size

    @property
    def lattice_max(self) -> int:
        return self.lattice_min + self.n_sites - 1

    def __getitem__(self, x: int) -> CoinParams:
        if not (self.lattice_min <= x <= self.lattice_max):
            raise KeyError(f"site {x} outside table range [{self.lattice_min}, {self.lattice_max}]")
        i = x - self.lattice_min
        return CoinParams(float(self.chi[i]), float(self.xi[i]), float(self.eta[i]), float(self.theta[i]))

    def matrices(self) -> np.ndarray:
        """Stacked per-site coin matrices, shape (n_sites, 2, 2)."""
        d = np.exp(1j * self.eta)
        dc = np.conj(d)
        cx, sx = np.cos(self.xi), np.sin(self.xi)
        ct, st = np.cos(self.theta), np.sin(self.theta)
        ph = np.exp(1j * self.chi)
        m = np.empty((self.n_sites, 2, 2), dtype=np.complex128)
        m[:, 0, 0] = ph * (cx * d * ct - sx * dc * st)
        m[:, 0, 1] = ph * (cx * d * st + sx * dc * ct)
        m[:, 1, 0] = ph * (-sx * d * ct - cx * dc * st)
        m[:, 1, 1] = ph * (-sx * d * st + cx * dc * ct)
        return m

    def covers(self, state: WalkerState) -> bool:
        return self.lattice_min == state.lattice_min and self.n_sites == state.n_sites


def make_state(coin: Iterable[complex], x0: int, half_width: int) -> WalkerState:
    """Delta state at site ``x0`` with the given normalized coin vector."""
    a, b = (complex(c) for c in coin)
    nrm = math.hypot(abs(a), abs(b))
    if abs(nrm - 1.0) > 1e-12:
        raise ValueError(f"coin vector must be normalized, |coin| = {nrm!r}")
    if half_width < 1:
        raise ValueError("half_width must be at least 1")
    if abs(x0) >= half_width:
        raise ValueError(f"start site {x0} must satisfy |x0| < half_width = {half_width}")
    n = 2 * half_width + 1
    amps = np.zeros((2, n), dtype=np.complex128)
    amps[0, x0 + half_width] = a
    amps[1, x0 + half_width] = b
    return WalkerState(-half_width, amps)


def _apply_sitewise(state: WalkerState, mats: np.ndarray) -> WalkerState:
    """Multiply each site's coin pair by a 2x2 matrix.

    ``mats`` is either a single (2, 2) matrix applied everywhere or a
    (n_sites, 2, 2) stack applied site by site.
    """
    if mats.ndim == 2:
        new = mats @ state.amps
    else:
        new = np.einsum("xij,jx->ix", mats, state.amps)
    return state.with_amps(new)


def apply_coin(state: WalkerState, table: CoinTable) -> WalkerState:
    """Apply the position-dependent coin: site x gets the U(2) of table[x]."""
    if not table.covers(state):
        raise ValueError(
            f"coin table on [{table.lattice_min}, {table.lattice_max}] does not match "
            f"state lattice [{state.lattice_min}, {state.lattice_max}]"
        )
    return _apply_sitewise(state, table.matrices())


def _guard_check(value: complex, state: WalkerState, side: str) -> None:
    if abs(value) > GUARD:
        raise LatticeGuardError(
            f"shift would move amplitude of magnitude {abs(value):.3e} off the {side} "
            f"edge of the lattice [{state.lattice_min}, {state.lattice_max}]; "
            "enlarge the lattice half-width",
        )


def shift_minus(state: WalkerState) -> WalkerState:
    """Move the left-moving component one site left; leave the other fixed."""
    _guard_check(state.amps[0, 0], state, "left")
    new = state.amps.copy()
    new[0, :-1] = state.amps[0, 1:]
    new[0, -1] = 0.0
    return state.with_amps(new)


def shift_plus(state: WalkerState) -> WalkerState:
    """Move the right-moving component one site right; leave the other fixed."""
    _guard_check(state.amps[1, -1], state, "right")
    new = state.amps.copy()
    new[1, 1:] = state.amps[1, :-1]
    new[1, 0] = 0.0
    return state.with_amps(new)


def shift_full(state: WalkerState) -> WalkerState:
    """Conditional shift: left mover to x-1, right mover to x+1."""
    _guard_check(state.amps[0, 0], state, "left")
    _guard_check(state.amps[1, -1], state, "right")
    new = np.empty_like(state.amps)
    new[0, :-1] = state.amps[0, 1:]
    new[0, -1] = 0.0
    new[1, 1:] = state.amps[1, :-1]
    new[1, 0] = 0.0
    return state.with_amps(new)


def _reduced_phase(phi: float) -> float:
    # IEEE remainder keeps e^{i*phi*x} bit-stable under adding full turns to
    # phi: the reduction of phi and of phi + 2*pi yield the same double
    # whenever the addition itself was exact.
    return math.remainder(phi, _TWO_PI)


def electric_phase(state: WalkerState, phi_e: float) -> WalkerState:
    """Multiply site x by exp(i * phi_e * x).

    The angle is reduced modulo 2*pi first; on integer sites that leaves the
    action unchanged and makes phi_e and phi_e + 2*pi bit-identical.
    """
    r = _reduced_phase(phi_e)
    if r == 0.0:
        return state
    phases = np.exp(1j * (r * state.sites))
    return state.with_amps(state.amps * phases)


@dataclass(frozen=True)
class WalkSpec:
    """Full description of one walk experiment.

    ``theta1`` is the coin angle of the plain and electric walks and the
    first coin of the split-step walk; ``theta2`` the second split-step coin.
    The generalized walk takes two coin tables instead; leave them ``None``
    with a ``seed`` set to draw disordered tables reproducibly.
    """

    walk_kind: str
    steps: int
    half_width: int
    coin_state: tuple[complex, complex] = SYMMETRIC_COIN
    start: int = 0
    theta1: float = math.pi / 4
    theta2: float = 0.0
    table1: CoinTable | None = None
    table2: CoinTable | None = None
    phi_e: float = 0.0
    seed: int | None = None

    KINDS = ("dtqw", "ssqw", "generalized", "electric-dtqw")

    def required_half_width(self) -> int:
        return abs(self.start) + self.steps + 2

    def validate(self) -> None:
        if self.walk_kind not in self.KINDS:
            raise ValueError(f"unknown walk kind {self.walk_kind!r}; expected one of {self.KINDS}")
        if self.steps < 0:
            raise ValueError("step count must be non-negative")
        need = self.required_half_width()
        if self.half_width < need:
            raise LatticeGuardError(
                f"half_width {self.half_width} too small for {self.steps} steps from "
                f"x0 = {self.start}; need at least {need}",
                required_half_width=need,
            )
        for t in (self.table1, self.table2):
            if t is not None and (t.lattice_min != -self.half_width or t.n_sites != 2 * self.half_width + 1):
                raise ValueError("coin tables must cover exactly the walk lattice")
        if self.walk_kind == "generalized" and (self.table1 is None or self.table2 is None) and self.seed is None:
            raise ValueError("generalized walk needs explicit coin tables or a seed to draw them")

    def resolved(self) -> "WalkSpec":
        """Return a spec with concrete coin tables (drawing from the seed if needed)."""
        self.validate()
        if self.walk_kind != "generalized" or (self.table1 is not None and self.table2 is not None):
            return self
        rng = np.random.default_rng(self.seed)
        t1 = self.table1 or CoinTable.random_disorder(self.half_width, rng)
        t2 = self.table2 or CoinTable.random_disorder(self.half_width, rng)
        return replace(self, table1=t1, table2=t2)

    def initial_state(self) -> WalkerState:
        return make_state(self.coin_state, self.start, self.half_width)


def step(state: WalkerState, spec: WalkSpec) -> WalkerState:
    """Advance one full walk step of the kind selected by ``spec``."""
    kind = spec.walk_kind
    if kind == "dtqw":
        return shift_full(_apply_sitewise(state, coin_matrix(spec.theta1)))
    if kind == "ssqw":
        s = _apply_sitewise(state, coin_matrix(spec.theta1))
        s = shift_minus(s)
        s = _apply_sitewise(s, coin_matrix(spec.theta2))
        return shift_plus(s)
    if kind == "generalized":
        if spec.table1 is None or spec.table2 is None:
            raise ValueError("generalized step needs resolved coin tables; call spec.resolved() first")
        s = apply_coin(state, spec.table1)
        s = shift_minus(s)
        s = apply_coin(s, spec.table2)
        return shift_plus(s)
    if kind == "electric-dtqw":
        s = shift_full(_apply_sitewise(state, coin_matrix(spec.theta1)))
        return electric_phase(s, spec.phi_e)
    raise ValueError(f"unknown walk kind {kind!r}")


def evolve(spec: WalkSpec) -> list[WalkerState]:
    """Run the walk and return the trajectory [state_0, ..., state_T]."""
    spec = spec.resolved()
    states = [spec.initial_state()]
    for _ in range(spec.steps):
        states.append(step(states[-1], spec))
    return states


def probability(state: WalkerState) -> dict[int, float]:
    """Site occupation probabilities |psi_l|^2 + |psi_r|^2 as a map x -> P."""
    p = np.sum(np.abs(state.amps) ** 2, axis=0)
    return {int(x): float(v) for x, v in zip(state.sites, p)}


def moments(p: Mapping[int, float]) -> tuple[float, float]:
    """Mean and variance of a site distribution."""
    xs = np.fromiter(p.keys(), dtype=np.float64, count=len(p))
    ws = np.fromiter(p.values(), dtype=np.float64, count=len(p))
    total = ws.sum()
    mean = float(xs @ ws / total)
    var = float((xs - mean) ** 2 @ ws / total)
    return mean, var


def spread(p: Mapping[int, float]) -> float:
    """Standard deviation of a site distribution."""
    return math.sqrt(moments(p)[1])


# --- dense matrix representations -----------------------------------------
#
# These build the walk-step unitaries as explicit matrices on the basis
# |coin> ⊗ |x>, with index coin * n_sites + (x - lattice_min).  Rows that a
# shift would move off the lattice are dropped, matching the state-level
# truncation.  The optical compiler verifies its element trains against
# these references.


def _n(half_width: int) -> int:
    return 2 * half_width + 1


def _translation(m: int, half_width: int) -> np.ndarray:
    """Matrix of |x> -> |x+m| on the truncated lattice (out-of-range rows dropped)."""
    return np.eye(_n(half_width), k=-m)


def coin_block_matrix(coin, half_width: int) -> np.ndarray:
    """Lift a coin onto the lattice: one 2x2 everywhere, or one per site."""
    coin = np.asarray(coin, dtype=np.complex128)
    n = _n(half_width)
    if coin.shape == (2, 2):
        return np.kron(coin, np.eye(n))
    if coin.shape != (n, 2, 2):
        raise ValueError(f"coin must be (2, 2) or ({n}, 2, 2), got {coin.shape}")
    out = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    for i in range(2):
        for j in range(2):
            out[i * n:(i + 1) * n, j * n:(j + 1) * n] = np.diag(coin[:, i, j])
    return out


def shift_minus_matrix(half_width: int) -> np.ndarray:
    n = _n(half_width)
    out = np.zeros((2 * n, 2 * n))
    out[:n, :n] = _translation(-1, half_width)
    out[n:, n:] = np.eye(n)
    return out


def shift_plus_matrix(half_width: int) -> np.ndarray:
    n = _n(half_width)
    out = np.zeros((2 * n, 2 * n))
    out[:n, :n] = np.eye(n)
    out[n:, n:] = _translation(+1, half_width)
    return out


def shift_full_matrix(half_width: int) -> np.ndarray:
    n = _n(half_width)
    out = np.zeros((2 * n, 2 * n))
    out[:n, :n] = _translation(-1, half_width)
    out[n:, n:] = _translation(+1, half_width)
    return out


def electric_phase_matrix(phi_e: float, half_width: int) -> np.ndarray:
    r = _reduced_phase(phi_e)
    phases = np.exp(1j * (r * np.arange(-half_width, half_width + 1)))
    return np.diag(np.concatenate([phases, phases]))


def split_step_operator(coin1, coin2, half_width: int) -> np.ndarray:
    """Dense split-step operator: plus-shift · coin2 · minus-shift · coin1.

    Each coin is a single 2x2 matrix or a per-site (n, 2, 2) stack.
    """
    return (
        shift_plus_matrix(half_width)
        @ coin_block_matrix(coin2, half_width)
        @ shift_minus_matrix(half_width)
        @ coin_block_matrix(coin1, half_width)
    )


def step_operator(spec: WalkSpec) -> np.ndarray:
    """Dense one-step operator of the walk described by ``spec``."""
    spec = spec.resolved()
    L = spec.half_width
    kind = spec.walk_kind
    if kind == "dtqw":
        return shift_full_matrix(L) @ coin_block_matrix(coin_matrix(spec.theta1), L)
    if kind == "ssqw":
        return split_step_operator(coin_matrix(spec.theta1), coin_matrix(spec.theta2), L)
    if kind == "generalized":
        return split_step_operator(spec.table1.matrices(), spec.table2.matrices(), L)
    if kind == "electric-dtqw":
        return (
            electric_phase_matrix(spec.phi_e, L)
            @ shift_full_matrix(L)
            @ coin_block_matrix(coin_matrix(spec.theta1), L)
        )
    raise ValueError(f"unknown walk kind {kind!r}")
