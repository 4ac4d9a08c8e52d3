"""Normal-form construction for compressed words and the compressed word problem."""

from .build import build_nf_tcslp, build_nf_tcslp_geodesic, nf_program, run_stages, solve_cwp
from .convert import append_bounded_suffix, convert
from .cut_elim import tcslp_to_tslp
from .evaluate import Engine
from .ladder import tslp_to_slp
from .roots import compressed_index_convert, ensure_component_roots, split_check
from .shortnf import nf_from_quasigeodesic, nf_short_hat
from .witness import NoWitnessFound, difference_search

__all__ = [
    "Engine", "NoWitnessFound", "append_bounded_suffix", "build_nf_tcslp", "build_nf_tcslp_geodesic", "compressed_index_convert",
    "convert", "difference_search", "ensure_component_roots", "nf_from_quasigeodesic", "nf_program",
    "nf_short_hat", "run_stages", "solve_cwp", "split_check", "tcslp_to_tslp", "tslp_to_slp",
]
