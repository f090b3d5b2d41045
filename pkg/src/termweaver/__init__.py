"""Unsupervised multi-word term recognition."""

from .concepts import ConceptEntry, ConceptKey
from .extract import DEFAULT_PATTERN, CandidateOccurrence, compile_pattern, extract_candidates
from .kernels import BACKEND
from .markup import Annotation, emit_inline_html, emit_standoff, match_phrases
from .normalize import Corpus, merge_tokenization_variants, normalize_tokens, to_concept_key
from .pipeline import STEPS, PipelineConfig, PipelineResult, TimingRecord, run_pipeline
from .preprocess import Document, Sentence, Token, load_corpus, preprocess_document
from .score import TermDictionary, classify
from .similarity import SimilarityParams, jaro, jaro_winkler

__all__ = [
    "Annotation", "BACKEND", "CandidateOccurrence", "ConceptEntry", "ConceptKey", "Corpus",
    "DEFAULT_PATTERN", "Document", "PipelineConfig", "PipelineResult", "STEPS", "Sentence",
    "SimilarityParams", "TermDictionary", "TimingRecord", "Token", "classify", "compile_pattern",
    "emit_inline_html", "emit_standoff", "extract_candidates", "jaro", "jaro_winkler", "load_corpus",
    "match_phrases", "merge_tokenization_variants", "normalize_tokens", "preprocess_document",
    "run_pipeline", "to_concept_key",
]
