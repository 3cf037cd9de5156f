# tests/__init__.py
"""Test suite for the isochron analysis toolkit."""
