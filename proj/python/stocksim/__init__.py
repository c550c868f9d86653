"""Stock-similarity backtesting toolkit: python surface over the C++ core."""

from ._stocksim import (
    aggregate,
    dtw,
    engle_granger,
    euclidean,
    mindist,
    paa,
    pearson_distance,
    pip,
    rank_similar,
    run_backtest,
    sax,
)

__all__ = [
    "aggregate",
    "dtw",
    "engle_granger",
    "euclidean",
    "mindist",
    "paa",
    "pearson_distance",
    "pip",
    "rank_similar",
    "run_backtest",
    "sax",
]
