#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Runs the subcommands of GaussField on the current configuration.

Every command turns the configuration into artefacts on disk and a list of
validation records.  The records decide the exit code: a command whose records
all pass returns `ReturnCode.OK`, any failing record gives
`ReturnCode.VALIDATION_FAILED`.
"""
import enum
import logging
import math
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

import gaussfield.configuration as config
from gaussfield.analysis.besov import (
    besov_norm_estimate,
    besov_partial_sums,
    level_ratios,
)
from gaussfield.analysis.covariance import (
    covariance_target,
    empirical_covariance,
    mean_estimate,
    pairing_moments,
    sample_pairings,
)
from gaussfield.analysis.nystrom import (
    nystrom_mercer,
    nystrom_norm_square,
    nystrom_sample_at,
)
from gaussfield.analysis.regularity import estimate_holder_exponent, holder_profile
from gaussfield.analysis.sandwich import random_sandwich_check
from gaussfield.analysis.weakstar import (
    batch_weak_star_pairings,
    default_weak_star_norm,
    distribution_distance,
    weak_star_norm,
)
from gaussfield.decomp.biorthogonalization import Decomposition, biorthogonalize
from gaussfield.decomp.norms import NormMode
from gaussfield.decomp.nuclearity import nuclearity_profile
from gaussfield.decomp.serialization import load_decomposition, save_decomposition
from gaussfield.decomp.tensorcoefficients import (
    Space,
    TensorCoefficients,
    tensor_coefficients,
)
from gaussfield.dyadic.dyadicindex import DyadicIndex
from gaussfield.dyadic.functionals import CoefficientFunctional, coeff_functional
from gaussfield.dyadic.grid import grid_points
from gaussfield.kernels.basemeasure import Lebesgue, l2_pairing
from gaussfield.kernels.kernelspec import (
    ExpAlpha,
    KernelSpec,
    WhiteNoise,
    eval_kernel,
    kernel_matrix,
    parse_kernel,
)
from gaussfield.measures.gaussiancovariance import gaussian_measure_coefficients
from gaussfield.measures.measuresample import (
    batch_measure_pairings,
    covariance_target as measure_covariance_target,
    explained_variance,
    sample_measure_field,
    write_density_csv,
)
from gaussfield.measures.whitenoise import whitenoise_decomposition
from gaussfield.reporting.export import write_table
from gaussfield.reporting.reportbackend import (
    AbstractReportBackend,
    ConsoleReportBackend,
    CSVReportBackend,
    JSONReportBackend,
)
from gaussfield.reporting.validationrecord import (
    ValidationRecord,
    all_passed,
    format_parameters,
)
from gaussfield.sampler.evaluation import field_on_grid, write_grid_csv
from gaussfield.sampler.fieldsample import draw_samples
from gaussfield.utils.exceptions import ConfigurationException, GaussFieldException
from gaussfield.utils.randomness import standard_normals
from gaussfield.utils.runtimebudget import RuntimeBudget

_LOGGER = logging.getLogger(__name__)

GAUSSIAN_MEASURE = "gaussian-measure"
"""Kernel name of the Gaussian-covariance field on measures."""

STANDARD_ERRORS = 4.0
"""Width of Monte-Carlo acceptance bands in standard errors."""

ORACLE_FLOOR = 0.02
"""Absolute tolerance of the Nyström oracle comparison."""

MERCER_TRACE_TOLERANCE = 1e-3

BIORTHOGONALITY_TOLERANCE = 1e-8
"""Allowed off-diagonal pairing and reconstruction error relative to the scale."""

NEGATIVE_PIVOT_TOLERANCE = 1e-10

PROFILE_GROWTH = 1.05
"""Seminorm ratio between the two finest resolutions that counts as growth."""

PROFILE_LEVELS = 4
"""Number of resolutions in a Hölder seminorm profile."""

FIRST_RATIO_LEVEL = 3
"""The coarsest level whose Besov level ratio is checked."""

COVARIANCE_POINTS = (0.0, 0.25, 0.5)

MIN_MOMENT_SAMPLES = 8

Records = List[ValidationRecord]


@enum.unique
class ReturnCode(enum.IntEnum):
    """Return codes for GaussField to signal result."""

    OK = 0
    """Symbolises that the command ran and all of its checks passed."""

    VALIDATION_FAILED = 1
    """Symbolises that at least one validation check failed."""

    USAGE_ERROR = 2
    """Symbolises that the configuration or an input file was invalid."""


def set_configuration(configuration: config.RunConfig) -> None:
    """Initialises the run configuration.

    Args:
        configuration: The configuration to use.
    """
    config.configuration = configuration


def run_command(command: config.Command) -> ReturnCode:
    """Run one subcommand on the current configuration.

    Args:
        command: The subcommand

    Returns:
        The return code of the run
    """
    try:
        with RuntimeBudget(command.value):
            records = _COMMANDS[config.Command(command)](config.configuration)
    except GaussFieldException as error:
        _LOGGER.error("%s failed: %s", command.value, error)
        return ReturnCode.USAGE_ERROR
    _report(records, command)
    if all_passed(records):
        return ReturnCode.OK
    failed = sum(1 for record in records if not record.passed)
    _LOGGER.warning("%d of %d checks failed", failed, len(records))
    return ReturnCode.VALIDATION_FAILED


def _report(records: Records, command: config.Command) -> None:
    backends: List[AbstractReportBackend] = [ConsoleReportBackend(command.value)]
    if config.configuration.report:
        path = Path(config.configuration.report)
        if path.suffix == ".json":
            backends.append(JSONReportBackend(path))
        else:
            backends.append(CSVReportBackend(path))
    for backend in backends:
        backend.write_data(records)


def _record(
    metric: str, value: float, tolerance: float, passed: bool, **parameters: object
) -> ValidationRecord:
    return ValidationRecord(
        metric, format_parameters(parameters), float(value), float(tolerance), passed
    )


def _info(metric: str, value: float, **parameters: object) -> ValidationRecord:
    return _record(metric, value, math.inf, True, **parameters)


def _require_path(value: Optional[str], flag: str) -> Path:
    if not value:
        raise ConfigurationException(f"this command needs {flag}")
    return Path(value)


def _pointwise_kernel(configuration: config.RunConfig) -> KernelSpec:
    spec = parse_kernel(configuration.kernel, configuration.dim)
    if not spec.pointwise:
        raise ConfigurationException(
            f"kernel {configuration.kernel} has no pointwise values"
        )
    return spec


def _kernel_exponent(spec: KernelSpec) -> float:
    return spec.alpha if isinstance(spec, ExpAlpha) else 1.0


def _diagonal_point(value: float, dim: int) -> np.ndarray:
    return np.full(dim, value)


def _build(
    configuration: config.RunConfig,
) -> Tuple[Decomposition, TensorCoefficients]:
    family, _, _ = configuration.kernel.strip().partition(":")
    if family == GAUSSIAN_MEASURE:
        coefficients = gaussian_measure_coefficients(
            configuration.dim,
            configuration.k_max,
            configuration.prefactor,
            configuration.max_basis,
        )
    else:
        spec = parse_kernel(configuration.kernel, configuration.dim)
        alpha = None if isinstance(spec, WhiteNoise) else configuration.alpha
        coefficients = tensor_coefficients(
            spec, configuration.dim, configuration.k_max, alpha, configuration.max_basis
        )
    norm_mode = (
        NormMode.TOTAL_VARIATION
        if coefficients.space is Space.MEASURE
        else configuration.norm
    )
    decomposition = biorthogonalize(coefficients, configuration.pivot_tol, norm_mode)
    return decomposition, coefficients


def _decomposition(
    configuration: config.RunConfig, spec: Optional[KernelSpec] = None
) -> Decomposition:
    if configuration.decomp:
        decomposition, _ = load_decomposition(Path(configuration.decomp))
        if spec is not None and (
            decomposition.meta.family != spec.describe()
            or decomposition.meta.dim != spec.dim
        ):
            raise ConfigurationException(
                f"decomposition {configuration.decomp} holds "
                f"{decomposition.meta.family} in dimension {decomposition.meta.dim}, "
                f"not {spec.describe()} in dimension {spec.dim}"
            )
        return decomposition
    return _build(configuration)[0]


def _verification_records(d: Decomposition) -> Records:
    report = d.report
    if report is None:
        raise ConfigurationException("decomposition carries no verification report")
    scale = max(1.0, report.max_lambda)
    largest_pivot = max(1.0, float(np.max(d.pivots, initial=0.0)))
    family = d.meta.family
    return [
        _record(
            "biorthogonality",
            report.max_off_diagonal,
            BIORTHOGONALITY_TOLERANCE * scale,
            report.max_off_diagonal <= BIORTHOGONALITY_TOLERANCE * scale,
            kernel=family,
            k_max=d.meta.k_max,
        ),
        _record(
            "reconstruction-residual",
            report.reconstruction_residual,
            BIORTHOGONALITY_TOLERANCE * largest_pivot,
            report.reconstruction_residual <= BIORTHOGONALITY_TOLERANCE * largest_pivot,
            kernel=family,
            k_max=d.meta.k_max,
        ),
        _record(
            "min-remaining-diagonal",
            report.min_remaining_diagonal,
            -NEGATIVE_PIVOT_TOLERANCE,
            report.min_remaining_diagonal >= -NEGATIVE_PIVOT_TOLERANCE,
            kernel=family,
            k_max=d.meta.k_max,
        ),
        _info("terms", d.size, kernel=family, basis_size=d.meta.size),
    ]


def _decompose(configuration: config.RunConfig) -> Records:
    out = _require_path(configuration.out, "--out")
    decomposition, coefficients = _build(configuration)
    save_decomposition(decomposition, out, coefficients)
    records = _verification_records(decomposition)
    if coefficients.space is Space.HOELDER:
        spec = parse_kernel(configuration.kernel, configuration.dim)
        for entry in nuclearity_profile(
            spec,
            configuration.dim,
            range(configuration.k_max + 1),
            configuration.alpha,
            configuration.norm,
            configuration.max_basis,
        ):
            records.append(
                _info("lambda-sum", entry.lambda_sum, k_max=entry.k_max)
            )
            records.append(
                _info("sqrt-lambda-sum", entry.sqrt_lambda_sum, k_max=entry.k_max)
            )
    return records


def _sample(configuration: config.RunConfig) -> Records:
    decomp = _require_path(configuration.decomp, "--decomp")
    out = _require_path(configuration.out, "--out")
    decomposition, _ = load_decomposition(decomp)
    if decomposition.space is Space.MEASURE:
        base = decomposition.base or Lebesgue(decomposition.meta.dim)
        measures = [
            sample_measure_field(decomposition, base, configuration.seed, stream)
            for stream in range(configuration.n_samples)
        ]
        rows = write_density_csv(out, measures, configuration.grid_resolution)
        terms = decomposition.size
    else:
        batch = draw_samples(
            decomposition,
            configuration.seed,
            configuration.n_samples,
            energy_cutoff=configuration.energy_cutoff,
            workers=configuration.workers,
        )
        rows = write_grid_csv(
            out,
            list(batch),
            decomposition,
            configuration.grid_resolution,
            configuration.max_grid_points,
        )
        terms = batch.coeffs.shape[1]
    kept = float(np.sum(decomposition.lambdas[:terms]))
    total = float(np.sum(decomposition.lambdas))
    share = kept / total if total > 0.0 else 1.0
    return [
        _info(
            "rows",
            rows,
            n=configuration.n_samples,
            grid=configuration.grid_resolution,
        ),
        _info("retained-terms", terms, energy_cutoff=configuration.energy_cutoff),
        _record(
            "retained-energy",
            share,
            1.0 - configuration.energy_cutoff,
            share >= 1.0 - configuration.energy_cutoff,
            energy_cutoff=configuration.energy_cutoff,
        ),
    ]


def _gaussianity_functionals(
    configuration: config.RunConfig,
) -> Dict[str, CoefficientFunctional]:
    dim = configuration.dim
    quarter = DyadicIndex.from_point([0.25] * dim)
    return {
        "dirac-0": CoefficientFunctional.dirac(_diagonal_point(0.0, dim)),
        "dirac-1/2": CoefficientFunctional.dirac(_diagonal_point(0.5, dim)),
        "dirac-1": CoefficientFunctional.dirac(_diagonal_point(1.0, dim)),
        "coefficient-1/4": coeff_functional(quarter, configuration.alpha),
        "dirac-sum-1/4-3/4": CoefficientFunctional.dirac(_diagonal_point(0.25, dim))
        + CoefficientFunctional.dirac(_diagonal_point(0.75, dim)),
    }


def _validate_cov(configuration: config.RunConfig) -> Records:
    decomposition = _decomposition(configuration)
    if decomposition.space is not Space.HOELDER:
        raise ConfigurationException("validate-cov needs a pointwise kernel")
    batch = draw_samples(
        decomposition,
        configuration.seed,
        configuration.n_samples,
        energy_cutoff=configuration.energy_cutoff,
        workers=configuration.workers,
    )
    records: Records = []
    rows = []
    for x in COVARIANCE_POINTS:
        for y in COVARIANCE_POINTS:
            eta_x = CoefficientFunctional.dirac(_diagonal_point(x, configuration.dim))
            eta_y = CoefficientFunctional.dirac(_diagonal_point(y, configuration.dim))
            estimate = empirical_covariance(batch, decomposition, eta_x, eta_y)
            target = covariance_target(decomposition, eta_x, eta_y)
            band = STANDARD_ERRORS * estimate.standard_error
            records.append(
                _record(
                    "covariance-deviation",
                    abs(estimate.value - target),
                    band,
                    estimate.within(target, STANDARD_ERRORS),
                    x=x,
                    y=y,
                    n=estimate.count,
                )
            )
            rows.append([x, y, estimate.value, estimate.standard_error, target])
    functionals = _gaussianity_functionals(configuration)
    if len(batch) < MIN_MOMENT_SAMPLES:
        functionals = {}
    for name, functional in functionals.items():
        moments = pairing_moments(sample_pairings(batch, decomposition, functional))
        records.append(
            _record(
                "skewness",
                abs(moments.skewness),
                STANDARD_ERRORS * moments.skewness_error,
                abs(moments.skewness) <= STANDARD_ERRORS * moments.skewness_error,
                functional=name,
            )
        )
        records.append(
            _record(
                "excess-kurtosis",
                abs(moments.excess_kurtosis),
                STANDARD_ERRORS * moments.kurtosis_error,
                abs(moments.excess_kurtosis)
                <= STANDARD_ERRORS * moments.kurtosis_error,
                functional=name,
            )
        )
    if len(batch) >= 2:
        norm = default_weak_star_norm(configuration.dim, decomposition.meta.k_max)
        distances = weak_star_norm(
            norm, batch_weak_star_pairings(norm, batch, decomposition)
        )
        half = len(batch) // 2
        records.append(
            _info(
                "weak-star-ks-distance",
                distribution_distance(distances[:half], distances[half:]),
                n=len(batch),
            )
        )
    if configuration.out:
        write_table(
            Path(configuration.out),
            ("x", "y", "estimate", "standard_error", "target"),
            rows,
        )
    return records


def _holder(configuration: config.RunConfig) -> Records:
    spec = _pointwise_kernel(configuration)
    expected = _kernel_exponent(spec)
    decomposition = _decomposition(configuration, spec)
    resolution = configuration.grid_resolution
    batch = draw_samples(
        decomposition,
        configuration.seed,
        configuration.n_samples,
        energy_cutoff=configuration.energy_cutoff,
        workers=configuration.workers,
    )
    exponents = np.array(
        [
            estimate_holder_exponent(
                field_on_grid(
                    sample, decomposition, resolution, configuration.max_grid_points
                ),
                resolution,
                configuration.statistic,
            )
            for sample in batch
        ]
    )
    mean = float(np.mean(exponents))
    records = [
        _record(
            "mean-holder-exponent",
            mean,
            0.1,
            abs(mean - expected) <= 0.1,
            kernel=spec.describe(),
            expected=expected,
            n=len(batch),
            statistic=configuration.increment_statistic,
        )
    ]

    # seminorm trend of the kernel section through the centre of the cube
    centre = _diagonal_point(0.5, configuration.dim)[None, :]
    first = max(1, resolution - PROFILE_LEVELS + 1)
    sections = {
        level: kernel_matrix(spec, grid_points(configuration.dim, level), centre)[:, 0]
        for level in range(first, resolution + 1)
    }
    bounded_up_to = min(2.0 * expected, 1.0)
    for gamma in configuration.gamma:
        profile = holder_profile(sections, gamma)
        seminorms = np.array([seminorm for _, seminorm in profile])
        growth = seminorms[-1] / seminorms[-2] if len(seminorms) > 1 else 1.0
        if gamma <= bounded_up_to:
            passed = growth <= PROFILE_GROWTH
        else:
            passed = bool(np.all(np.diff(seminorms) > 0.0)) and growth > 1.0
        records.append(
            _record(
                "section-seminorm-growth",
                growth,
                PROFILE_GROWTH,
                passed,
                gamma=gamma,
                bounded=gamma <= bounded_up_to,
            )
        )
    return records


def _besov(configuration: config.RunConfig) -> Records:
    spec = _pointwise_kernel(configuration)
    exponent = _kernel_exponent(spec)
    records: Records = []
    for gamma in configuration.gamma:
        sums = besov_partial_sums(
            spec,
            configuration.dim,
            configuration.k_max,
            gamma,
            cap=configuration.max_basis,
        )
        ratios = level_ratios(sums)
        for level in range(FIRST_RATIO_LEVEL, configuration.k_max):
            ratio = float(ratios[level])
            if gamma < exponent:
                passed = ratio < 1.0
            elif gamma > exponent:
                passed = ratio >= 1.0
            else:
                passed = True
            records.append(
                _record(
                    "besov-level-ratio", ratio, 1.0, passed, gamma=gamma, level=level
                )
            )
        if gamma < 1.0:
            records.append(
                _info(
                    "besov-norm-estimate",
                    besov_norm_estimate(spec, gamma),
                    gamma=gamma,
                )
            )
    return records


def _first_coordinate(points: np.ndarray) -> np.ndarray:
    return points[:, 0]


def _constant_one(points: np.ndarray) -> np.ndarray:
    return np.ones(points.shape[0])


def _first_coordinate_squared(points: np.ndarray) -> np.ndarray:
    return points[:, 0] ** 2


def _whitenoise(configuration: config.RunConfig) -> Records:
    spec = parse_kernel(configuration.kernel, configuration.dim)
    if isinstance(spec, WhiteNoise):
        base = spec.base
    else:
        _LOGGER.info(
            "Kernel %s is not white noise; using Lebesgue measure", spec.describe()
        )
        base = Lebesgue(configuration.dim)
    decomposition = whitenoise_decomposition(
        base,
        configuration.dim,
        configuration.k_max,
        configuration.pivot_tol,
        configuration.max_basis,
    )
    if configuration.out:
        save_decomposition(decomposition, Path(configuration.out))
    records = _verification_records(decomposition)
    batch = draw_samples(
        decomposition,
        configuration.seed,
        configuration.n_samples,
        workers=configuration.workers,
    )
    tests = {"1": _constant_one, "x": _first_coordinate}
    pairings = {
        name: batch_measure_pairings(batch, decomposition, base, test)
        for name, test in tests.items()
    }
    for first, second in (("1", "1"), ("1", "x"), ("x", "x")):
        estimate = mean_estimate(pairings[first] * pairings[second])
        target = l2_pairing(base, tests[first], tests[second], decomposition.meta.k_max)
        records.append(
            _record(
                "pairing-covariance-deviation",
                abs(estimate.value - target),
                STANDARD_ERRORS * estimate.standard_error,
                estimate.within(target, STANDARD_ERRORS),
                first=first,
                second=second,
                target=target,
            )
        )
        truncated = measure_covariance_target(
            decomposition, tests[first], tests[second], base
        )
        records.append(
            _record(
                "truncated-covariance-deviation",
                abs(truncated - target),
                BIORTHOGONALITY_TOLERANCE,
                abs(truncated - target) <= BIORTHOGONALITY_TOLERANCE,
                first=first,
                second=second,
            )
        )
    square = _first_coordinate_squared
    outside = l2_pairing(base, square, square, decomposition.meta.k_max + 4)
    if outside > 0.0:
        records.append(
            _info(
                "explained-variance",
                explained_variance(decomposition, square, base, outside),
                test="x^2",
                k_max=decomposition.meta.k_max,
            )
        )
    return records


def _mercer_oracle(configuration: config.RunConfig) -> Records:
    spec = _pointwise_kernel(configuration)
    oracle = nystrom_mercer(spec, configuration.grid_size)
    diagonal = np.array([eval_kernel(spec, node, node) for node in oracle.grid])
    trace = float(np.dot(oracle.weights, diagonal))
    eigenvalue_sum = float(np.sum(oracle.eigenvalues))
    records = [
        _record(
            "mercer-trace-deviation",
            abs(eigenvalue_sum - trace),
            MERCER_TRACE_TOLERANCE,
            abs(eigenvalue_sum - trace) <= MERCER_TRACE_TOLERANCE,
            nodes=oracle.grid.shape[0],
        )
    ]
    xi = standard_normals(configuration.seed, 0, oracle.eigenvalues.shape[0])
    left, right = nystrom_norm_square(oracle, xi)
    records.append(
        _record(
            "norm-square-identity",
            abs(left - right),
            BIORTHOGONALITY_TOLERANCE * max(1.0, right),
            abs(left - right) <= BIORTHOGONALITY_TOLERANCE * max(1.0, right),
        )
    )

    decomposition = _decomposition(configuration, spec)
    points = np.array(
        [_diagonal_point(value, configuration.dim) for value in COVARIANCE_POINTS]
    )
    values = nystrom_sample_at(
        oracle, points, configuration.seed, configuration.n_samples
    )
    for i, x in enumerate(COVARIANCE_POINTS):
        for j, y in enumerate(COVARIANCE_POINTS):
            estimate = mean_estimate(values[:, i] * values[:, j])
            target = covariance_target(
                decomposition,
                CoefficientFunctional.dirac(points[i]),
                CoefficientFunctional.dirac(points[j]),
            )
            band = max(ORACLE_FLOOR, STANDARD_ERRORS * estimate.standard_error)
            records.append(
                _record(
                    "oracle-covariance-deviation",
                    abs(estimate.value - target),
                    band,
                    estimate.within(target, STANDARD_ERRORS, ORACLE_FLOOR),
                    x=x,
                    y=y,
                )
            )
    return records


def _sandwich(configuration: config.RunConfig) -> Records:
    report = random_sandwich_check(
        configuration.alpha,
        configuration.seed,
        configuration.n_triples,
        configuration.dim,
    )
    parameters = {"alpha": configuration.alpha, "triples": report.checked}
    return [
        _record(
            "lower-bound-violations",
            report.lower_violations,
            0,
            report.lower_violations == 0,
            **parameters,
        ),
        _record(
            "upper-bound-violations",
            report.upper_violations,
            0,
            report.upper_violations == 0,
            **parameters,
        ),
        _info("max-lower-violation", report.max_lower_violation, **parameters),
        _info("max-upper-violation", report.max_upper_violation, **parameters),
        _info("geodesic-bound-failures", report.geodesic_bound_failures, **parameters),
        _info("skipped-triples", report.skipped, **parameters),
    ]


_COMMANDS: Dict[config.Command, Callable[[config.RunConfig], Records]] = {
    config.Command.DECOMPOSE: _decompose,
    config.Command.SAMPLE: _sample,
    config.Command.VALIDATE_COV: _validate_cov,
    config.Command.HOLDER: _holder,
    config.Command.BESOV: _besov,
    config.Command.WHITENOISE: _whitenoise,
    config.Command.MERCER_ORACLE: _mercer_oracle,
    config.Command.SANDWICH: _sandwich,
}
