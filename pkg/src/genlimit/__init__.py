"""Executable laboratory for online language-generation games over the
integers: exact eventually-periodic set algebra, indexed language
collections, generator and adversary strategies, combinatorial dimensions,
and a replayable transcript harness."""

__version__ = "0.1.0"
