"""SMOG readability and Naive Bayes polarity for micropost corpora."""
from .aggregate import AggregateReport, Aggregator, Month, ScoredDoc
from .corpus import Account, Document, FileFetcher, Gender, MemoryFetcher, ingest_accounts, ingest_documents
from .estimators import NaiveBayesPolarity, SmogScorer, TextNormalizer
from .normalize import AbbrevTable, NormalizedDoc, normalize
from .sentiment import Lexicon, Polarity, SentimentModel, classify, load_lexicon, train
from .smog import Formula, SmogGrade, grade_document, smog_precise, smog_short, smog_simplified
from .syllables import SyllableCounter, count_syllables, is_polysyllabic

__version__ = "0.1.0"
