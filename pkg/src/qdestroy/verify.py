"""Randomized property harness and brute-force oracles.

Every algebraic claim the destruction calculus relies on is checked here at
desk scale: trace preservation and positivity of the supertraces, their
composition laws (through independently materialized superoperator
matrices), the Kraus contract of every destruction map, linearity,
idempotence, entropy behavior, and the irreducible-subspace containment of
identical-particle outputs.  A deliberately corrupted supertrace is also run
to prove the harness detects broken maps.

Randomness discipline: trial t of property p draws from a fresh
``numpy.random.Generator`` (PCG64) seeded with
``SeedSequence([master_seed, crc32(p), t])``, so runs are reproducible
trial-by-trial and independent of execution order.  Reports carry the worst
trial's seed triple.
"""

from __future__ import annotations

import time
import zlib
from dataclasses import dataclass
from itertools import product

import numpy as np

from .destruction import (
    DestructionMode,
    destroy_one,
    destroy_two_distinguishable,
    destroy_two_identical,
)
from .errors import (
    NotHermitianError,
    NotPositiveSemidefiniteError,
    TraceNotOneError,
)
from .operators import (
    DEFAULT_TOLERANCES,
    DensityMatrix,
    Operator,
    Projector,
    Space,
    Tolerances,
    certify_density,
    embed_two_particle,
    von_neumann_entropy,
)
from .spaces import PhysicalSpace, ProductSpace, make_extended, sector_indices
from .supertraces import (
    SupertraceKind,
    partial_supertrace,
    supertrace_product,
    _external_matrix,
    _full_product_matrix,
    _inner_matrix,
    _left_matrix,
    _right_matrix,
)
from .symmetry import (
    ExchangeSign,
    check_exchange_symmetry,
    one_particle_sym_projector,
    symmetrize_state,
    symmetrizer,
)

SYSTEM_KINDS = ("one", "two_dist", "two_sym", "two_antisym")

_PAIR_DIMS = ((2, 2), (2, 3), (3, 3))
_IDENTICAL_DIMS = (2, 3)
_ENTROPY_DIMS = (2, 3)
_MUTATION_DIMS = (2, 3)
_MUTATION_DETECTION_THRESHOLD = 1e-3


@dataclass(frozen=True)
class TrialConfig:
    """Configuration of a verification run; fully determines its output."""

    seed: int = 42
    trials: int = 1000
    dims: tuple[int, ...] = (2, 3, 4)
    kinds: tuple[str, ...] = SYSTEM_KINDS
    tolerances: Tolerances = DEFAULT_TOLERANCES

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "kinds", tuple(self.kinds))
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not self.dims or any(d < 2 for d in self.dims):
            raise ValueError(f"dims must each be >= 2, got {self.dims}")
        unknown = [k for k in self.kinds if k not in SYSTEM_KINDS]
        if unknown or not self.kinds:
            raise ValueError(
                f"kinds must be a non-empty subset of {SYSTEM_KINDS}, got {self.kinds}"
            )


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of one verified property; deterministic given the master seed."""

    name: str
    trials: int
    max_defect: float
    tolerance: float
    passed: bool
    worst_seed: tuple[int, int, int] | None
    seconds: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "max_defect": self.max_defect,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "worst_seed": list(self.worst_seed) if self.worst_seed else None,
            "seconds": self.seconds,
        }


def _seed_triple(master: int, stream: str, trial: int) -> tuple[int, int, int]:
    return (master, zlib.crc32(stream.encode()), trial)


def _rng(master: int, stream: str, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(_seed_triple(master, stream, trial)))


class _Tracker:
    """Accumulates trial defects for one property report."""

    def __init__(self, name: str, tolerance: float):
        self.name = name
        self.tolerance = tolerance
        self.trials = 0
        self.max_defect: float | None = None
        self.worst: tuple[int, int, int] | None = None
        self.started = time.monotonic()

    def add(self, defect: float, seed: tuple[int, int, int] | None = None):
        defect = float(defect)
        self.trials += 1
        if self.max_defect is None or defect > self.max_defect:
            self.max_defect = defect
            self.worst = seed

    def report(self, passed: bool | None = None) -> PropertyReport:
        worst = self.max_defect if self.max_defect is not None else 0.0
        if passed is None:
            passed = worst <= self.tolerance
        return PropertyReport(
            name=self.name,
            trials=self.trials,
            max_defect=worst,
            tolerance=self.tolerance,
            passed=passed,
            worst_seed=self.worst,
            seconds=time.monotonic() - self.started,
        )


# ---------------------------------------------------------------------------
# Random inputs
# ---------------------------------------------------------------------------

def _as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_density(dim: int, seed, space: Space | None = None) -> DensityMatrix:
    """G G^dagger / Tr(G G^dagger) for G of iid standard complex Gaussians.

    Full rank with probability 1; deterministic for a given seed.
    """
    rng = _as_generator(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    m /= np.real(np.trace(m))
    return certify_density(Operator(m, space if space is not None else PhysicalSpace(dim)))


def random_symmetric_density(dim: int, sign: ExchangeSign, seed) -> DensityMatrix:
    """A random pair state projected onto the (anti)symmetric sector."""
    rng = _as_generator(seed)
    base = random_density(dim * dim, rng)
    return symmetrize_state(base, sign)


def random_projector(space: PhysicalSpace, seed, rank: int | None = None) -> Projector:
    """A rank-``rank`` projector with Haar-like random range."""
    rng = _as_generator(seed)
    d = space.dim
    if rank is None:
        rank = int(rng.integers(0, d + 1))
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    _, vecs = np.linalg.eigh((g + g.conj().T) / 2)
    chosen = vecs[:, :rank]
    return Projector(chosen @ chosen.conj().T, space)


def _random_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def _square_product(da: int, db: int | None = None) -> ProductSpace:
    left = make_extended(PhysicalSpace(da))
    right = left if db is None or db == da else make_extended(PhysicalSpace(db))
    return ProductSpace(left, right)


# ---------------------------------------------------------------------------
# Oracle: materialized superoperators
# ---------------------------------------------------------------------------

def materialize_superoperator(map_fn, space: ProductSpace) -> np.ndarray:
    """Matrix of a linear map on End(product space), in the row-major
    vectorization: column r*D + c holds the vectorized image of the basis
    endomorphism with a single 1 at (r, c).  Composition identities reduce
    to matrix products of the results."""
    dim = space.dim
    out = np.zeros((dim * dim, dim * dim), dtype=np.complex128)
    for r in range(dim):
        for c in range(dim):
            unit = np.zeros((dim, dim), dtype=np.complex128)
            unit[r, c] = 1.0
            image = map_fn(Operator(unit, space))
            matrix = image.matrix if isinstance(image, Operator) else np.asarray(image)
            out[:, r * dim + c] = matrix.reshape(-1)
    return out


# ---------------------------------------------------------------------------
# Supertrace properties
# ---------------------------------------------------------------------------

def _prop_trace_preservation(config: TrialConfig) -> PropertyReport:
    name = "supertrace.trace_preservation_left_right"
    tracker = _Tracker(name, 1e-12)
    for da, db in _PAIR_DIMS:
        space = _square_product(da, db)
        dim = space.dim
        for r in range(dim):
            for c in range(dim):
                unit = np.zeros((dim, dim), dtype=np.complex128)
                unit[r, c] = 1.0
                op = Operator(unit, space)
                for kind in (SupertraceKind.LEFT, SupertraceKind.RIGHT):
                    out = partial_supertrace(kind, op)
                    tracker.add(abs(np.trace(out.matrix) - np.trace(unit)))
    for trial in range(config.trials):
        rng = _rng(config.seed, name, trial)
        da, db = _PAIR_DIMS[trial % len(_PAIR_DIMS)]
        space = _square_product(da, db)
        sigma = _random_matrix(space.dim, rng)
        op = Operator(sigma, space)
        for kind in (SupertraceKind.LEFT, SupertraceKind.RIGHT):
            out = partial_supertrace(kind, op)
            tracker.add(
                abs(np.trace(out.matrix) - np.trace(sigma)),
                _seed_triple(config.seed, name, trial),
            )
    return tracker.report()


def _prop_inner_external_components(config: TrialConfig) -> PropertyReport:
    name = "supertrace.inner_external_component_forms"
    tracker = _Tracker(name, 1e-12)
    for d in _IDENTICAL_DIMS:
        space = _square_product(d)
        ext = d + 1
        vac = d
        for a, b, ap, bp in product(range(ext), repeat=4):
            unit = np.zeros((ext, ext, ext, ext), dtype=np.complex128)
            unit[a, b, ap, bp] = 1.0
            matrix = unit.reshape(space.dim, space.dim)
            expected_inner = np.zeros_like(unit)
            if ap == b:
                expected_inner[a, vac, vac, bp] = 1.0
            expected_external = np.zeros_like(unit)
            if bp == a:
                expected_external[vac, b, ap, vac] = 1.0
            got_inner = _inner_matrix(matrix, ext, ext)
            got_external = _external_matrix(matrix, ext, ext)
            defect = max(
                np.max(np.abs(got_inner - expected_inner.reshape(space.dim, space.dim))),
                np.max(np.abs(got_external - expected_external.reshape(space.dim, space.dim))),
            )
            if max(a, b, ap, bp) < d:
                # two-particle input: the output diagonals must vanish
                defect = max(
                    defect,
                    np.max(np.abs(np.diag(got_inner))),
                    np.max(np.abs(np.diag(got_external))),
                )
            tracker.add(defect)
    return tracker.report()


def _prop_composition_left_right(config: TrialConfig) -> PropertyReport:
    name = "supertrace.composition_left_right"
    tracker = _Tracker(name, 1e-14)
    for da, db in _PAIR_DIMS:
        space = _square_product(da, db)
        left = materialize_superoperator(
            lambda op: partial_supertrace(SupertraceKind.LEFT, op), space
        )
        right = materialize_superoperator(
            lambda op: partial_supertrace(SupertraceKind.RIGHT, op), space
        )
        full = materialize_superoperator(supertrace_product, space)
        tracker.add(np.max(np.abs(left @ right - full)))
        tracker.add(np.max(np.abs(right @ left - full)))
    return tracker.report()


def _prop_composition_inner_external(config: TrialConfig) -> PropertyReport:
    name = "supertrace.composition_inner_external_signed"
    tracker = _Tracker(name, 1e-12)
    for trial in range(config.trials):
        rng = _rng(config.seed, name, trial)
        d = _IDENTICAL_DIMS[trial % len(_IDENTICAL_DIMS)]
        space = _square_product(d)
        ext = d + 1
        for sign in (ExchangeSign.SYMMETRIC, ExchangeSign.ANTISYMMETRIC):
            rho = random_symmetric_density(d, sign, rng)
            sigma = embed_two_particle(rho, space).matrix
            full = _full_product_matrix(sigma, ext, ext)
            inner_of_external = _inner_matrix(_external_matrix(sigma, ext, ext), ext, ext)
            external_of_inner = _external_matrix(_inner_matrix(sigma, ext, ext), ext, ext)
            defect = max(
                np.max(np.abs(inner_of_external - int(sign) * full)),
                np.max(np.abs(external_of_inner - int(sign) * full)),
            )
            tracker.add(defect, _seed_triple(config.seed, name, trial))
    return tracker.report()


def _prop_lemma_positivity(config: TrialConfig) -> PropertyReport:
    name = "supertrace.lemma_positivity"
    tracker = _Tracker(name, 1e-10)
    for d in config.dims:
        stream = f"{name}|{d}"
        space = _square_product(d)
        for trial in range(config.trials):
            rng = _rng(config.seed, stream, trial)
            sigma = random_density(space.dim, rng, space=space).matrix
            worst = 0.0
            for shrink in (_left_matrix, _right_matrix):
                out = shrink(sigma, d + 1, d + 1)
                low = float(np.linalg.eigvalsh((out + out.conj().T) / 2)[0])
                worst = max(worst, -low)
            tracker.add(worst, _seed_triple(config.seed, stream, trial))
    return tracker.report()


def _prop_supertrace_linearity(config: TrialConfig) -> PropertyReport:
    name = "supertrace.linearity"
    tracker = _Tracker(name, 1e-12)
    for trial in range(config.trials):
        rng = _rng(config.seed, name, trial)
        da, db = _PAIR_DIMS[trial % len(_PAIR_DIMS)]
        space = _square_product(da, db)
        dl, dr = da + 1, db + 1
        sigma1 = _random_matrix(space.dim, rng)
        sigma2 = _random_matrix(space.dim, rng)
        alpha = complex(*rng.standard_normal(2))
        beta = complex(*rng.standard_normal(2))
        maps = [_left_matrix, _right_matrix, _full_product_matrix]
        if da == db:
            maps += [_inner_matrix, _external_matrix]
        mixed = alpha * sigma1 + beta * sigma2
        defect = max(
            np.max(np.abs(m(mixed, dl, dr) - alpha * m(sigma1, dl, dr) - beta * m(sigma2, dl, dr)))
            for m in maps
        )
        tracker.add(defect, _seed_triple(config.seed, name, trial))
    return tracker.report()


# ---------------------------------------------------------------------------
# Destruction properties
# ---------------------------------------------------------------------------

def _system_input(kind: str, d: int, rng: np.random.Generator):
    """(rho, projectors) drawn for one trial of a given system kind."""
    phys = PhysicalSpace(d)
    if kind == "one":
        rho = random_density(d, rng)
        return rho, (random_projector(phys, rng),)
    if kind == "two_dist":
        rho = random_density(d * d, rng)
        return rho, (random_projector(phys, rng), random_projector(phys, rng))
    sign = ExchangeSign.SYMMETRIC if kind == "two_sym" else ExchangeSign.ANTISYMMETRIC
    rho = random_symmetric_density(d, sign, rng)
    return rho, (random_projector(phys, rng),)


def _run_destruction(kind: str, rho, projectors, mode: DestructionMode):
    if kind == "one":
        return destroy_one(rho, projectors[0], mode)
    if kind == "two_dist":
        return destroy_two_distinguishable(rho, projectors[0], projectors[1], mode)
    sign = ExchangeSign.SYMMETRIC if kind == "two_sym" else ExchangeSign.ANTISYMMETRIC
    return destroy_two_identical(rho, projectors[0], sign, mode)


def _sector_leak(state: DensityMatrix, space: ProductSpace, sector) -> float:
    inside = sector_indices(space, sector)
    mask = np.ones(space.dim, dtype=bool)
    mask[list(inside)] = False
    if not mask.any():
        return 0.0
    m = state.matrix
    return float(max(np.max(np.abs(m[mask, :])), np.max(np.abs(m[:, mask]))))


def _prop_kraus(config: TrialConfig) -> list[PropertyReport]:
    herm = _Tracker("destruction.kraus_hermiticity", config.tolerances.hermiticity)
    trace = _Tracker("destruction.kraus_trace", config.tolerances.trace)
    psd = _Tracker("destruction.kraus_positivity", config.tolerances.psd)
    prob = _Tracker("destruction.kraus_probability_sum", config.tolerances.trace)
    support = _Tracker("destruction.kraus_sector_support", 1e-12)
    for kind in config.kinds:
        for d in config.dims:
            stream = f"destruction.kraus|{kind}|{d}"
            for trial in range(config.trials):
                rng = _rng(config.seed, stream, trial)
                seed = _seed_triple(config.seed, stream, trial)
                rho, projectors = _system_input(kind, d, rng)
                for mode in (DestructionMode.NO_SELECTION, DestructionMode.SELECTION):
                    try:
                        outcome = _run_destruction(kind, rho, projectors, mode)
                    except NotHermitianError as err:
                        herm.add(abs(err.defect), seed)
                        continue
                    except TraceNotOneError as err:
                        trace.add(abs(err.defect), seed)
                        continue
                    except NotPositiveSemidefiniteError as err:
                        psd.add(abs(err.defect), seed)
                        continue
                    if mode is DestructionMode.NO_SELECTION:
                        states = [(outcome.state, None)]
                    else:
                        states = [(b.state, b.sector) for b in outcome.branches if b.possible]
                        prob.add(
                            abs(sum(b.probability for b in outcome.branches) - 1.0),
                            seed,
                        )
                    for state, sector in states:
                        herm.add(state.hermiticity_defect, seed)
                        trace.add(state.trace_defect, seed)
                        psd.add(max(0.0, -state.min_eigenvalue), seed)
                        if sector is not None and kind != "one":
                            support.add(_sector_leak(state, outcome.space, sector), seed)
    return [herm.report(), trace.report(), psd.report(), prob.report(), support.report()]


def _prop_no_selection_linearity(config: TrialConfig) -> PropertyReport:
    name = "destruction.no_selection_linearity"
    tracker = _Tracker(name, 1e-12)
    for kind in config.kinds:
        stream = f"{name}|{kind}"
        for trial in range(config.trials):
            rng = _rng(config.seed, stream, trial)
            d = config.dims[trial % len(config.dims)]
            rho1, projectors = _system_input(kind, d, rng)
            rho2, _ = _system_input(kind, d, rng)
            mu = float(rng.uniform())
            mixed = certify_density(
                Operator(mu * rho1.matrix + (1 - mu) * rho2.matrix, rho1.space)
            )
            out_mixed = _run_destruction(kind, mixed, projectors, DestructionMode.NO_SELECTION)
            out1 = _run_destruction(kind, rho1, projectors, DestructionMode.NO_SELECTION)
            out2 = _run_destruction(kind, rho2, projectors, DestructionMode.NO_SELECTION)
            defect = np.max(
                np.abs(
                    out_mixed.state.matrix
                    - mu * out1.state.matrix
                    - (1 - mu) * out2.state.matrix
                )
            )
            tracker.add(defect, _seed_triple(config.seed, stream, trial))
    return tracker.report()


def _prop_idempotence(config: TrialConfig) -> PropertyReport:
    name = "destruction.idempotence_one_particle"
    tracker = _Tracker(name, 1e-12)
    for trial in range(config.trials):
        rng = _rng(config.seed, name, trial)
        d = config.dims[trial % len(config.dims)]
        rho, (pi,) = _system_input("one", d, rng)
        once = destroy_one(rho, pi, DestructionMode.NO_SELECTION)
        twice = destroy_one(once.state, pi, DestructionMode.NO_SELECTION)
        tracker.add(
            np.max(np.abs(twice.state.matrix - once.state.matrix)),
            _seed_triple(config.seed, name, trial),
        )
    return tracker.report()


def _prop_irreducible_subspace(config: TrialConfig) -> PropertyReport:
    name = "destruction.one_particle_irreducible_subspace"
    tracker = _Tracker(name, 1e-12)
    dims = tuple(d for d in config.dims if d <= 3) or (2,)
    signs = []
    if "two_sym" in config.kinds:
        signs.append(ExchangeSign.SYMMETRIC)
    if "two_antisym" in config.kinds:
        signs.append(ExchangeSign.ANTISYMMETRIC)
    for sign in signs:
        for d in dims:
            stream = f"{name}|{int(sign)}|{d}"
            phys = PhysicalSpace(d)
            projector_cache = one_particle_sym_projector(_square_product(d)).matrix
            for trial in range(config.trials):
                rng = _rng(config.seed, stream, trial)
                rho = random_symmetric_density(d, sign, rng)
                rank = int(rng.integers(1, d))  # proper window
                pi = random_projector(phys, rng, rank)
                outcome = destroy_two_identical(rho, pi, sign, DestructionMode.SELECTION)
                branch = outcome.branches[1]
                if not branch.possible:
                    tracker.add(0.0)
                    continue
                m = branch.state.matrix
                tracker.add(
                    np.max(np.abs(projector_cache @ m @ projector_cache - m)),
                    _seed_triple(config.seed, stream, trial),
                )
    return tracker.report()


def _prop_entropy_rank1(config: TrialConfig) -> PropertyReport:
    name = "destruction.entropy_rank1_no_selection"
    tracker = _Tracker(name, 1e-10)
    for trial in range(config.trials):
        rng = _rng(config.seed, name, trial)
        d = _ENTROPY_DIMS[trial % len(_ENTROPY_DIMS)]
        rho = random_density(d, rng)
        pi = random_projector(PhysicalSpace(d), rng, 1)
        entropy_in = von_neumann_entropy(rho)
        out = destroy_one(rho, pi, DestructionMode.NO_SELECTION)
        entropy_out = von_neumann_entropy(out.state)
        # must not be negative beyond tolerance: S_out >= S_in - tol
        tracker.add(entropy_in - entropy_out, _seed_triple(config.seed, name, trial))
    return tracker.report()


def _prop_entropy_selection_family(config: TrialConfig) -> PropertyReport:
    name = "destruction.entropy_selection_family"
    tracker = _Tracker(name, 1e-10)
    qubit = PhysicalSpace(2, ("up", "down"))
    pi = Projector(np.diag([1.0, 0.0]), qubit)
    for w10 in range(11):
        w = w10 / 10
        ceiling = w * (1 - w)
        for fraction in (0.0, 0.5, 1.0):
            for phase in (0.0, np.pi / 2):
                c = np.sqrt(fraction * ceiling) * np.exp(1j * phase)
                rho = certify_density(
                    Operator(np.array([[w, c], [np.conj(c), 1 - w]]), qubit)
                )
                entropy_in = von_neumann_entropy(rho)
                outcome = destroy_one(rho, pi, DestructionMode.SELECTION)
                for branch in outcome.branches:
                    if not branch.possible:
                        continue
                    entropy_branch = von_neumann_entropy(branch.state)
                    tracker.add(max(entropy_branch, entropy_branch - entropy_in))
    return tracker.report()


def _prop_probability_bookkeeping(config: TrialConfig) -> PropertyReport:
    name = "destruction.probability_bookkeeping"
    tracker = _Tracker(name, 1e-12)
    kinds = [k for k in config.kinds if k != "one"]
    for kind in kinds:
        stream = f"{name}|{kind}"
        for trial in range(config.trials):
            rng = _rng(config.seed, stream, trial)
            d = config.dims[trial % len(config.dims)]
            rho, projectors = _system_input(kind, d, rng)
            unconditional = _run_destruction(kind, rho, projectors, DestructionMode.NO_SELECTION)
            enumerated = _run_destruction(kind, rho, projectors, DestructionMode.SELECTION)
            total = np.zeros_like(unconditional.state.matrix)
            for branch in enumerated.branches:
                if branch.possible:
                    total = total + branch.probability * branch.state.matrix
            tracker.add(
                np.max(np.abs(total - unconditional.state.matrix)),
                _seed_triple(config.seed, stream, trial),
            )
    return tracker.report()


# ---------------------------------------------------------------------------
# Symmetry properties
# ---------------------------------------------------------------------------

def _prop_symmetrizer_complementarity(config: TrialConfig) -> PropertyReport:
    name = "symmetry.projector_complementarity"
    tracker = _Tracker(name, 1e-15)
    for d in config.dims:
        plus = symmetrizer(d, ExchangeSign.SYMMETRIC)
        minus = symmetrizer(d, ExchangeSign.ANTISYMMETRIC)
        tracker.add(np.max(np.abs(plus + minus - np.eye(d * d))))
        tracker.add(np.max(np.abs(plus @ minus)))
    return tracker.report()


def _prop_symmetrize_roundtrip(config: TrialConfig) -> PropertyReport:
    name = "symmetry.symmetrize_then_check"
    tracker = _Tracker(name, 1e-12)
    for trial in range(config.trials):
        rng = _rng(config.seed, name, trial)
        d = config.dims[trial % len(config.dims)]
        sign = ExchangeSign.SYMMETRIC if trial % 2 == 0 else ExchangeSign.ANTISYMMETRIC
        rho = random_density(d * d, rng)
        symmetric = symmetrize_state(rho, sign)
        report = check_exchange_symmetry(symmetric, sign)
        tracker.add(report.max_violation, _seed_triple(config.seed, name, trial))
    return tracker.report()


def _prop_sym_projector_rank(config: TrialConfig) -> PropertyReport:
    name = "symmetry.one_particle_projector_rank"
    tracker = _Tracker(name, 1e-10)
    for d in config.dims:
        projector = one_particle_sym_projector(_square_product(d))
        values = np.linalg.eigvalsh(projector.matrix)
        rank = int(np.sum(values > 0.5))
        defect = float(np.max(np.abs(values - np.round(values))))
        if rank != d:
            defect = max(defect, abs(rank - d))
        tracker.add(defect)
    return tracker.report()


# ---------------------------------------------------------------------------
# Mutation check: the harness must reject a corrupted map
# ---------------------------------------------------------------------------

def _right_matrix_wrong_delta(matrix: np.ndarray, dl: int, dr: int) -> np.ndarray:
    """A deliberately broken right supertrace whose delta compares the right
    bra against a cyclically shifted right ket."""
    t = matrix.reshape(dl, dr, dl, dr)
    out = np.zeros_like(t)
    out[:, dr - 1, :, dr - 1] = np.einsum("abcb->ac", np.roll(t, 1, axis=3))
    return out.reshape(dl * dr, dl * dr)


def _prop_mutation_sensitivity(config: TrialConfig) -> PropertyReport:
    """Runs the no-selection two-particle sum with the corrupted right
    supertrace; the trace check must flag it on at least 95% of trials."""
    name = "verify.mutation_sensitivity"
    tracker = _Tracker(name, 0.05)
    detected = 0
    trials = 0
    for trial in range(config.trials):
        rng = _rng(config.seed, name, trial)
        d = _MUTATION_DIMS[trial % len(_MUTATION_DIMS)]
        space = _square_product(d)
        phys = PhysicalSpace(d)
        rho = random_density(d * d, rng)
        pi_a = random_projector(phys, rng, rank=int(rng.integers(1, d)))
        pi_b = random_projector(phys, rng, rank=int(rng.integers(1, d)))
        sigma = embed_two_particle(rho, space).matrix
        ext = d + 1
        lift = np.zeros((ext, ext), dtype=np.complex128)
        a1 = lift.copy()
        a1[:d, :d] = pi_a.matrix
        a0 = lift.copy()
        a0[:d, :d] = np.eye(d) - pi_a.matrix
        b1 = lift.copy()
        b1[:d, :d] = pi_b.matrix
        b0 = lift.copy()
        b0[:d, :d] = np.eye(d) - pi_b.matrix
        pieces = [
            np.kron(a0, b0) @ sigma @ np.kron(a0, b0),
            np.kron(a0, b1) @ sigma @ np.kron(a0, b1),
            np.kron(a1, b0) @ sigma @ np.kron(a1, b0),
            np.kron(a1, b1) @ sigma @ np.kron(a1, b1),
        ]
        corrupted = (
            pieces[0]
            + _right_matrix_wrong_delta(pieces[1], ext, ext)
            + _left_matrix(pieces[2], ext, ext)
            + _full_product_matrix(pieces[3], ext, ext)
        )
        trace_defect = abs(np.trace(corrupted) - 1.0)
        trials += 1
        if trace_defect > _MUTATION_DETECTION_THRESHOLD:
            detected += 1
    undetected_fraction = 1.0 - detected / trials
    tracker.add(undetected_fraction)
    tracker.trials = trials
    return tracker.report()


# ---------------------------------------------------------------------------
# Suite
# ---------------------------------------------------------------------------

def run_suite(config: TrialConfig) -> list[PropertyReport]:
    """Run every verified property and return one report per property.

    Deterministic: identical configs produce identical reports (timing
    aside).  Failures are reported, never raised.
    """
    reports: list[PropertyReport] = []
    reports.append(_prop_trace_preservation(config))
    reports.append(_prop_inner_external_components(config))
    reports.append(_prop_composition_left_right(config))
    reports.append(_prop_composition_inner_external(config))
    reports.append(_prop_lemma_positivity(config))
    reports.append(_prop_supertrace_linearity(config))
    reports.extend(_prop_kraus(config))
    reports.append(_prop_no_selection_linearity(config))
    if "one" in config.kinds:
        reports.append(_prop_idempotence(config))
        reports.append(_prop_entropy_rank1(config))
        reports.append(_prop_entropy_selection_family(config))
    if "two_sym" in config.kinds or "two_antisym" in config.kinds:
        reports.append(_prop_irreducible_subspace(config))
    if any(k != "one" for k in config.kinds):
        reports.append(_prop_probability_bookkeeping(config))
    reports.append(_prop_symmetrizer_complementarity(config))
    reports.append(_prop_symmetrize_roundtrip(config))
    reports.append(_prop_sym_projector_rank(config))
    reports.append(_prop_mutation_sensitivity(config))
    return reports


def suite_passed(reports: list[PropertyReport]) -> bool:
    return all(report.passed for report in reports)


def suite_document(config: TrialConfig, reports: list[PropertyReport]) -> dict:
    """The structured form of a suite run, shared with the CLI output."""
    return {
        "config": {
            "seed": config.seed,
            "trials": config.trials,
            "dims": list(config.dims),
            "kinds": list(config.kinds),
        },
        "properties": [report.to_dict() for report in reports],
        "all_passed": suite_passed(reports),
    }


__all__ = [
    "SYSTEM_KINDS",
    "PropertyReport",
    "TrialConfig",
    "materialize_superoperator",
    "random_density",
    "random_projector",
    "random_symmetric_density",
    "run_suite",
    "suite_document",
    "suite_passed",
]
