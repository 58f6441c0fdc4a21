"""Enumeration, the theorem registry and counterexample search."""
from .enumerate import (
    canonical_form, count_pretopologies, enumerate_group_pretopologies, enumerate_pretopologies,
    neighbourhood_systems, parse_filter,
)
from .registry import DEFAULT_REGISTRY, EXPERIMENTAL, PROVEN, TheoremRecord, registry_by_id
from .search import QUESTIONS, Exhausted, Question, SearchTask, search_counterexample
from .suite import Instance, Witness, instances, replay, run_theorem_suite, suite

__all__ = [
    "canonical_form", "count_pretopologies", "enumerate_group_pretopologies", "enumerate_pretopologies",
    "neighbourhood_systems", "parse_filter", "DEFAULT_REGISTRY", "EXPERIMENTAL", "PROVEN", "TheoremRecord",
    "registry_by_id", "QUESTIONS", "Exhausted", "Question", "SearchTask", "search_counterexample",
    "Instance", "Witness", "instances", "replay", "run_theorem_suite", "suite",
]
