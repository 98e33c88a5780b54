"""Plain-text word-vector tables and cosine distances between labels.

The file format is the common one used to distribute pre-trained
vectors: an optional first line ``count dimension`` followed by one
``word v1 v2 ... vd`` line per word, whitespace-separated. No vector
corpus is bundled; any file in this format works, including tiny
synthetic fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .embedding import pca_reduce
from .errors import WordVectorError
from .metrics import DistanceMatrix


@dataclass(frozen=True)
class WordVectorTable:
    """Immutable word-to-vector mapping with a single shared dimension."""

    words: tuple[str, ...]
    vectors: np.ndarray

    def __post_init__(self) -> None:
        vectors = np.array(self.vectors, dtype=float)
        if vectors.ndim != 2 or vectors.shape[0] != len(self.words):
            raise WordVectorError(
                f"vectors must be ({len(self.words)}, d), got shape {vectors.shape}"
            )
        if len(set(self.words)) != len(self.words):
            raise WordVectorError("words must be unique")
        vectors.flags.writeable = False
        object.__setattr__(self, "words", tuple(self.words))
        object.__setattr__(self, "vectors", vectors)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.words

    @property
    def dimension(self) -> int:
        return int(self.vectors.shape[1])

    def vector(self, word: str) -> np.ndarray:
        try:
            return self.vectors[self.words.index(word)]
        except ValueError:
            raise WordVectorError(f"word {word!r} is not in the table") from None


def _looks_like_header(tokens: list[str]) -> bool:
    if len(tokens) != 2:
        return False
    try:
        int(tokens[0]), int(tokens[1])
    except ValueError:
        return False
    return True


def parse_word_vectors(path: str | Path) -> WordVectorTable:
    """Read a text word-vector file, reporting errors with line numbers.

    A first line of exactly two integers is treated as the ``count
    dimension`` header; otherwise the dimension is inferred from the
    first vector line.
    """
    path = Path(path)
    words: list[str] = []
    rows: list[list[float]] = []
    declared_count: int | None = None
    dimension: int | None = None
    with path.open(encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            tokens = raw.split()
            if not tokens:
                continue
            if not words and declared_count is None and _looks_like_header(tokens):
                declared_count, dimension = int(tokens[0]), int(tokens[1])
                if declared_count < 0 or dimension < 1:
                    raise WordVectorError(f"{path.name}:{lineno}: invalid header {raw.strip()!r}")
                continue
            word, values = tokens[0], tokens[1:]
            if dimension is None:
                if not values:
                    raise WordVectorError(f"{path.name}:{lineno}: no vector values")
                dimension = len(values)
            if len(values) != dimension:
                raise WordVectorError(
                    f"{path.name}:{lineno}: expected {dimension} values, got {len(values)}"
                )
            if word in words:
                raise WordVectorError(f"{path.name}:{lineno}: duplicate word {word!r}")
            try:
                rows.append([float(value) for value in values])
            except ValueError as exc:
                raise WordVectorError(f"{path.name}:{lineno}: {exc}") from None
            words.append(word)
    if not words:
        raise WordVectorError(f"{path.name}: no word vectors found")
    if declared_count is not None and declared_count != len(words):
        raise WordVectorError(
            f"{path.name}: header declares {declared_count} words, file has {len(words)}"
        )
    return WordVectorTable(tuple(words), np.array(rows))


def save_word_vectors(table: WordVectorTable, path: str | Path, *, header: bool = True) -> None:
    """Write a table in the text format; values use the shortest decimal
    form that parses back to the same float."""
    lines = []
    if header:
        lines.append(f"{len(table)} {table.dimension}")
    for word, row in zip(table.words, table.vectors):
        values = " ".join(np.format_float_positional(value, trim="-") for value in row)
        lines.append(f"{word} {values}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_substitutions(path: str | Path) -> dict[str, str]:
    """Read a label-to-word substitution map from TSV."""
    path = Path(path)
    substitutions: dict[str, str] = {}
    with path.open(encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2 or not fields[0].strip() or not fields[1].strip():
                raise WordVectorError(
                    f"{path.name}:{lineno}: expected 'label<TAB>word'"
                )
            label = fields[0].strip()
            if label in substitutions:
                raise WordVectorError(f"{path.name}:{lineno}: duplicate label {label!r}")
            substitutions[label] = fields[1].strip()
    return substitutions


@lru_cache(maxsize=1)
def default_substitutions() -> dict[str, str]:
    """The bundled substitution map for the built-in registry labels."""
    data = resources.files("motioncodes").joinpath("data/substitutions.tsv")
    with resources.as_file(data) as path:
        return load_substitutions(path)


def cosine_distance_matrix(
    table: WordVectorTable,
    labels: Sequence[str],
    substitutions: Mapping[str, str] | None = None,
    *,
    pca_dims: int | None = None,
) -> DistanceMatrix:
    """Pairwise cosine distances 1 - cos(u, v) between label vectors.

    Labels are first mapped through the substitution table (identity for
    unlisted labels); a label whose substituted word is missing raises an
    error naming both forms. With ``pca_dims`` the looked-up vectors are
    PCA-reduced before distances are taken; values above the data's rank
    are clamped.
    """
    subs = dict(substitutions) if substitutions else {}
    missing = []
    vectors = []
    for label in labels:
        word = subs.get(label, label)
        if word in table:
            vectors.append(table.vector(word))
        elif word == label:
            missing.append(f"{label!r}")
        else:
            missing.append(f"{label!r} (substituted {word!r})")
    if missing:
        raise WordVectorError("labels missing from word-vector table: " + ", ".join(missing))
    matrix = np.array(vectors)
    if pca_dims is not None:
        target = min(pca_dims, *matrix.shape)
        if target < matrix.shape[1]:
            matrix = pca_reduce(matrix, target).vectors
    norms = np.linalg.norm(matrix, axis=1)
    degenerate = np.flatnonzero(norms == 0.0)
    if degenerate.size:
        raise WordVectorError(
            "zero-length vectors cannot be compared by cosine: "
            + ", ".join(repr(labels[i]) for i in degenerate)
        )
    unit = matrix / norms[:, None]
    distances = 1.0 - unit @ unit.T
    distances = np.clip((distances + distances.T) / 2.0, 0.0, 2.0)
    np.fill_diagonal(distances, 0.0)
    return DistanceMatrix(tuple(labels), distances)
