"""Seeded instance generation, the suite catalog and the command line."""
from .suites import REGISTRY, Bounds, fingerprint, get_suite, list_suites, run, run_case
from .cli import generate, main, replay
