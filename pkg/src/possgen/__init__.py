"""Lexicon-driven generation of English possessive determiners in Japanese-to-English transfer."""

from importlib import resources

from .engine import AnnotatedSentence, Metrics, evaluate, generate, read_gold
from .ir import Sentence, parse_record, read_corpus, validate_against_lexicon
from .lexicon import Lexicon, is_a, load_lexicon
from .patterns import Decision, ExpressionPattern, load_patterns
from .pronouns import PossessiveForm, deictic_pronoun, pronoun_for_antecedent, resolve_reflexive
from .refgen import RefgenConfig, load_config

__version__ = "0.1.0"


def data_text(name: str) -> str:
    """Contents of a file shipped in ``possgen/data``."""
    return resources.files(__name__).joinpath("data", name).read_text(encoding="utf-8")


def default_lexicon() -> Lexicon:
    return load_lexicon(data_text("lexicon.json"))


def default_patterns() -> list[ExpressionPattern]:
    return load_patterns(data_text("patterns.json"))


__all__ = [
    "AnnotatedSentence", "Decision", "ExpressionPattern", "Lexicon", "Metrics",
    "PossessiveForm", "RefgenConfig", "Sentence", "data_text", "default_lexicon",
    "default_patterns", "deictic_pronoun", "evaluate", "generate", "is_a",
    "load_config", "load_lexicon", "load_patterns", "parse_record",
    "pronoun_for_antecedent", "read_corpus", "read_gold", "resolve_reflexive",
    "validate_against_lexicon",
]
