"""Lower bounds on energy dissipation in noisy reversible computation.

Noise leaves a computing system with entropy ``Hbar``; the temperature at
which its equilibrium entropy equals ``Hbar`` (the effective noise
temperature) fixes the heat ``E(T)`` that error correction must remove per
step. Combined with quantum speed limits this gives heat rates growing with
the square of the computation rate.
"""
__version__ = "0.1.0"

from .errors import (AccuracyError, DivergenceError, DomainError, NoiseTempError,
                     SolverError, UnattainableEntropyError, ValidationError)
from .spectra import (NATURAL, SI, Harmonic, PhysicalConstants, PowerLawDOS, Tabulated,
                      ThermalPoint, TwoLevel, entropy_by_quadrature, error_probability,
                      log_partition, thermal_energy, thermal_entropy, thermal_point)
from .thermo import (ClausiusTrial, EffectiveTemperature, clausius_transfer,
                     effective_temperature, entropy_change_by_quadrature,
                     temperature_for_energy)
from .qstate import (DensityMatrix, InformationReport, PureStateVector, StateEnsemble,
                     information_report, mixture_decomposition_check, ml_sequence_general,
                     ml_sequence_harmonic, qubit_noisy_pair, von_neumann_entropy)
from .bounds import (DissipationReport, RateReport, dissipation_pipeline, environment_heat,
                     oscillator_dissipation, powerlaw_dissipation_asymptotic,
                     qubit_dissipation, rate_bounds)
