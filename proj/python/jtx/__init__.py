"""Spectral and transport quantities of half-line Jacobi operators."""

from jtx._core import (  # noqa: F401
    DiscreteMeasure,
    JacobiModel,
    Lead,
    PeriodicJacobi,
    TruncatedJunction,
    ac_density,
    borel_transform,
    borel_transform_measure,
    build_truncated,
    cesaro_current,
    crystalline_current,
    crystalline_transmittance,
    current_at_time,
    discriminant,
    eigenfunction,
    lb_transmittance,
    linear_response,
    m_function,
    measure_to_jacobi,
    one_step_matrix,
    periodize,
    repeated_sample_current,
    restrict_repeated,
    run_experiment,
    sigma_ac_probe,
    steady_current,
    thouless_current,
    tm_inverse_square_integral,
    transfer_norm,
    weak_density_approx,
)

__version__ = getattr(__import__("jtx._core", fromlist=["__version__"]), "__version__", "dev")
