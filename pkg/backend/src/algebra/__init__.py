"""Squarefree monomial ideals over the plain and extended literal alphabets."""
