"""
Release Version.

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

__version__ = "0.1.0"
