"""cuspex: exact computational algebra for twisted group algebras, Clifford
theory, twisted extended quotients and cuspidal enhanced parameter data."""

__version__ = "0.1.0"
