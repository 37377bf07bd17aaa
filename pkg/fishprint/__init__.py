"""
Greedy fingerprinting of sparse binary profile datasets.

Targeted fingerprinting picks a few items that single out one profile; general fingerprinting
picks items that split every profile into the smallest anonymity sets.  Exact solvers for small
inputs and anonymity set statistics are included to check and summarise the results.
"""

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

from .core import Dataset, Profile, build_dataset
from .targeted import TargetProfile, Fingerprint, targeted_fingerprint, targeted_fingerprint_batch
from .general import Partitioning, GeneralResult, general_fingerprint, minimum_key
from .oracle import OracleResult, exact_targeted, exact_general, exact_minimum_key
from .analysis import AnalysisReport, analyze_targeted_batch, analyze_general, sweep_general
from .dataio import load_dataset, save_dataset, load_target
from .synth import SynthConfig, generate_synthetic
from .reports import emit_report, parse_report, load_report
