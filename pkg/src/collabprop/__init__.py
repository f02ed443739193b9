"""Individual-level research collaboration propensity by academic rank."""
from .classify import CollabFlags, classify
from .corpus import (Address, BylineAuthor, Corpus, Publication, RecordError, dump_corpus,
                     filter_doc_types, parse_corpus, scan_corpus)
from .indicators import (FORMS, CollabProfile, Form, GroupStats, aggregate_propensity,
                         build_profile, classify_staff, group_stats)
from .pipeline import Analysis, analyze
from .roster import (Academic, AttributionSet, Rank, Roster, attribute_explicit,
                     attribute_heuristic, load_roster, merge_attributions, sds_coverage_filter)
from .stats import RankComparison, compare_ranks, mann_whitney, stars

__version__ = "0.1.0"
