# coding: utf-8
"""Planted-community benchmarks, accuracy metrics, and result serialization."""
from .generator import *
from .metrics import *
from .sweep import *
from . import report
