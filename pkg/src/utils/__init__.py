"""Utility modules for file handling."""
from .file_handling import DATA_DIR, FileHandler, SystemFile, resolve_path

__all__ = ['DATA_DIR', 'FileHandler', 'SystemFile', 'resolve_path']
