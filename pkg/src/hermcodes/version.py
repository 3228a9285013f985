"""
Version file.

The file is automatically updated by `bump_version.sh`.
"""

__version__ = "0.1.0-dev"
__date__ = "2026-10-18"
