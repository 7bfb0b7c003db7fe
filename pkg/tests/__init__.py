"""
Tests for the Paulian stabilizer toolkit, one module per layer
"""
