"""tanglekit: exact 2- and 3-string tangle analysis for difference topology."""

__version__ = "0.1.0"
