"""Geometric discord, purification and three-tangle classification of a two-qubit family."""
from .cxmat import eig_herm2, hs_norm_sq, max_eig_sym3, partial_trace, tensor
from .discord import (
    DiscordBreakdown,
    efg,
    geometric_discord_closed,
    geometric_discord_oracle,
    is_classical,
    lambda_max_closed,
)
from .family import BlochForm, FamilyParams, bloch_form_closed, build_sigma, chi_states, overlap, pauli_expand
from .purify import (
    PurificationError,
    PurifiedState,
    SingularFormulaError,
    SpectralPair,
    amplitudes_closed,
    purify,
    spectral_decompose_qubit,
    verify_purification,
)
from .report import PointReport, SweepSpec, analyze_point, sweep_csv
from .tangle import (
    PaperLabel,
    SloccLabel,
    TangleReport,
    classify_paper,
    classify_slocc,
    delta,
    tangle_report,
    three_tangle_closed,
    three_tangle_general,
    three_tangle_k,
)

__version__ = "0.1.0"
