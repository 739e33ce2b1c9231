#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# File: src/config/settings.py

"""
Settings Module

Size guards for the exhaustive algorithms and the switches read from the
environment (cross-check mode, default worker count).
"""

# Standard library imports
import os
from dataclasses import dataclass
from typing import Mapping, Optional

# Define constants
DEFAULT_TU_BOUND = 8
DEFAULT_CANONICAL_BOUND = 9
DEFAULT_MINOR_BOUND = 6
DEFAULT_ENUMERATION_BOUND = 7
DEFAULT_JOBS = 1
VERIFY_ENV_VAR = "MONOCREM_VERIFY"
JOBS_ENV_VAR = "MONOCREM_JOBS"

_TRUTHY = {"1", "true", "yes", "on"}


@dataclass(frozen=True)
class Settings:
    """
    Runtime configuration.

    Attributes:
        verify: Whether decide cross-runs the torsion criteria
        jobs: Default number of worker processes for classification
    """

    verify: bool = False
    jobs: int = DEFAULT_JOBS


def load_settings(environ: Optional[Mapping[str, str]] = None) -> Settings:
    """
    Build the settings from the environment.

    Args:
        environ: Mapping to read variables from (os.environ if None)

    Returns:
        Settings instance
    """
    if environ is None:
        environ = os.environ

    verify = environ.get(VERIFY_ENV_VAR, "").strip().lower() in _TRUTHY

    jobs = DEFAULT_JOBS
    raw_jobs = environ.get(JOBS_ENV_VAR, "").strip()
    if raw_jobs.isdigit() and int(raw_jobs) > 0:
        jobs = int(raw_jobs)

    return Settings(verify=verify, jobs=jobs)
