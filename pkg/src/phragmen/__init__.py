"""Phragmén's approval-based committee rules in exact rational arithmetic."""

from .apportionment import (check_lower_quota, dhondt, induced_apportionment, largest_remainder,
                            party_list_profile, sainte_lague)
from .axioms import AxiomReport, Witness, check_ejr, check_jr, check_pjr, check_pr_membership, \
    exists_pr
from .balance import balanced_loads, min_max_load, peel
from .enestrom import enestrom_phragmen
from .model import (ApprovalProfile, LoadDistribution, LoadDistributionError, ProfileError,
                    Rational, RuleOutcome, leximax_compare, parse_profile,
                    validate_load_distribution, voter_loads)
from .optrules import (algorithm1_driver, emit_milp_step, emit_miqp, leximax_phragmen,
                       reference_step_solver, var_phragmen)
from .seq import seq_phragmen

__version__ = "0.1.0"

__all__ = [
    "ApprovalProfile", "LoadDistribution", "LoadDistributionError", "ProfileError", "Rational",
    "RuleOutcome", "AxiomReport", "Witness",
    "parse_profile", "validate_load_distribution", "voter_loads", "leximax_compare",
    "seq_phragmen", "leximax_phragmen", "var_phragmen", "enestrom_phragmen",
    "balanced_loads", "min_max_load", "peel",
    "check_jr", "check_pjr", "check_ejr", "check_pr_membership", "exists_pr",
    "emit_milp_step", "emit_miqp", "algorithm1_driver", "reference_step_solver",
    "dhondt", "sainte_lague", "largest_remainder", "induced_apportionment",
    "check_lower_quota", "party_list_profile",
]
