"""Test corpora: worked instances, random generators and brute-force oracles."""

from importlib import resources

from .generators import RandomDagSpec, gen_gold_sample, gen_mcis_instance, gen_random_dag, gen_similarity_values
from .oracles import (
    oracle_critical_path,
    oracle_lis,
    oracle_matching,
    oracle_mcis,
    oracle_topo_orders,
)


def corpus_path(name: str):
    """Path of a file in the shipped fixture corpus."""
    return resources.files(__name__) / "corpus" / name


__all__ = [
    "RandomDagSpec",
    "gen_random_dag",
    "gen_gold_sample",
    "gen_mcis_instance",
    "gen_similarity_values",
    "oracle_mcis",
    "oracle_matching",
    "oracle_topo_orders",
    "oracle_lis",
    "oracle_critical_path",
    "corpus_path",
]
