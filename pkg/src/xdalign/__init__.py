"""Cross-lingual comparable corpus construction toolkit.

Builds document-level and sentence-level alignments between two
monolingual news article collections using embedding similarity,
with threshold tuning, post-processing and comparability analytics.
"""

__version__ = "0.1.0"
