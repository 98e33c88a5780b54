"""Label registries: ordered label-to-code tables with TSV persistence.

A registry maps human motion labels ("pour", "chop", ...) to motion
codes. Several labels may share one code; those labels name mechanically
equivalent motions. The on-disk format is UTF-8 TSV, one ``label<TAB>
code`` pair per line, with ``#`` comment lines and blank lines ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from .codec import MotionCode, format_code, parse_code
from .errors import MotionCodesError, RegistryError, UnknownLabel


@dataclass(frozen=True)
class LabelRegistry:
    """Immutable ordered mapping from labels to motion codes."""

    entries: tuple[tuple[str, MotionCode], ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for label, code in self.entries:
            if not label:
                raise RegistryError("labels must be non-empty")
            if "\t" in label or "\n" in label:
                raise RegistryError(f"label {label!r} contains tab or newline")
            if label in seen:
                raise RegistryError(f"duplicate label {label!r}")
            if not isinstance(code, MotionCode):
                raise RegistryError(f"entry for {label!r} is not a MotionCode")
            seen.add(label)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, MotionCode]]) -> "LabelRegistry":
        return cls(tuple((label, code) for label, code in pairs))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[str, MotionCode]]:
        return iter(self.entries)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.entries)

    @property
    def codes(self) -> tuple[MotionCode, ...]:
        return tuple(code for _, code in self.entries)

    def code_for_label(self, label: str) -> MotionCode:
        for entry_label, code in self.entries:
            if entry_label == label:
                return code
        raise UnknownLabel(f"label {label!r} is not in the registry")

    def labels_for_code(self, code: MotionCode) -> list[str]:
        """All labels carrying the given code, in registry order."""
        wanted = format_code(code)
        return [label for label, entry in self.entries if format_code(entry) == wanted]


def load_registry(path: str | Path) -> LabelRegistry:
    """Read a TSV registry file, reporting parse errors with line numbers."""
    path = Path(path)
    pairs: list[tuple[str, MotionCode]] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise RegistryError(
                    f"{path.name}:{lineno}: expected 'label<TAB>code', got {len(fields)} fields"
                )
            label, code_text = fields[0].strip(), fields[1].strip()
            if not label:
                raise RegistryError(f"{path.name}:{lineno}: empty label")
            if label in seen:
                raise RegistryError(f"{path.name}:{lineno}: duplicate label {label!r}")
            try:
                code = parse_code(code_text)
            except MotionCodesError as exc:
                raise RegistryError(f"{path.name}:{lineno}: {exc}") from exc
            seen.add(label)
            pairs.append((label, code))
    return LabelRegistry.from_pairs(pairs)


def save_registry(registry: LabelRegistry, path: str | Path) -> None:
    """Write a registry as TSV; load_registry(save path) restores it."""
    path = Path(path)
    lines = ["# label\t18-bit motion code"]
    lines += [f"{label}\t{format_code(code)}" for label, code in registry]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


@lru_cache(maxsize=1)
def bundled_registry() -> LabelRegistry:
    """The bundled registry of everyday manipulation motions."""
    data = resources.files("motioncodes").joinpath("data/registry.tsv")
    with resources.as_file(data) as path:
        return load_registry(path)
