"""Exact nilpotent-orbit and cocharacter computations for semisimple Lie algebras."""

__version__ = "1.0.0"
