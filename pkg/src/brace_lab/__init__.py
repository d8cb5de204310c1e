"""Finite left braces, set-theoretic Yang-Baxter maps and their reflections."""

__version__ = "0.1.0"
