"""Refinement type checker with a finite denotational backend."""

__version__ = "0.1.0"
