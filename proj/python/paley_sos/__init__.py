"""Python bindings for the Paley graph sum-of-squares toolkit."""

from ._paley_sos import *  # noqa: F401,F403
