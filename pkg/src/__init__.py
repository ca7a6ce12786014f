"""Laguerre and Dunkl-Laguerre potential kernel toolkit"""

__version__ = "1.0.0"
