"""Motivic zeta functions, motivic volumes and monodromy from SNC resolution data."""

from .grothendieck import (L, L_INV, ONE, ZERO, EMPTY, LaurentPoly, MotivicClass, Specialization,
                           class_add, class_scale, laurent_mul, serre_reduce, specialize_class,
                           substitute)
from .model import (Component, ResolutionModel, StratumData, blow_up_stratum, derive_mu,
                    gcd_multiplicity, is_J_linear, is_Xs_linear, validate)
from .series import (MotivicSeries, SeriesTerm, blowup_invariance_check, direct_coefficient,
                     limit_T_infinity, motivic_volume, motivic_zeta, nearby_cycles,
                     serre_series, series_coefficient, volume_series, weil_identity_check)
from .monodromy import (FactoredRational, LefschetzReport, euler_milnor, lefschetz_number,
                        lefschetz_series, log_derivative_coefficients, monodromy_zeta,
                        verify_trace)
from .jets import (JetVector, SparsePoly, count_jets, count_jets_at_origin, eval_jet,
                   verify_point_count)
from .io import load_model_text, model_to_dict, parse_model, parse_poly, render_model

__version__ = "0.1.0"
