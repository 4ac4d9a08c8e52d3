"""Compressed word problem for free products of free abelian groups."""

from .slp_core import Slp, TooLong, ProgramError
from .group_model import ConstantsBundle, GroupContext, nf_word

__version__ = "0.1.0"

__all__ = ["Slp", "TooLong", "ProgramError", "ConstantsBundle", "GroupContext", "nf_word"]
