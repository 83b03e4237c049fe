"""Bundled example graphs, loadable by name (``load_figure("fig3a")``)."""

from __future__ import annotations

from importlib import resources

from .graph import MixedGraph, parse_graph


def figure_names() -> list:
    files = resources.files(__package__).joinpath("figures")
    return sorted(f.name for f in files.iterdir() if not f.name.startswith((".", "_")))


def figure_path(name: str):
    """Filesystem path of a bundled graph; ``name`` may omit the extension."""
    files = resources.files(__package__).joinpath("figures")
    for full in figure_names():
        if full == name or full.rsplit(".", 1)[0] == name:
            return files.joinpath(full)
    raise KeyError(f"no bundled figure named {name!r}")


def load_figure(name: str) -> MixedGraph:
    return parse_graph(figure_path(name).read_text(encoding="utf-8"))
