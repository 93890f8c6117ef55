"""Finite fields, matrix groups and the builtin group families."""
