"""Toolchain for the FG and FGG core calculi: parsing, typechecking,
small-step evaluation, the call-site dictionary-passing and erasure
translations, a co-simulation harness, and a micro-benchmark generator."""

__version__ = "0.1.0"
