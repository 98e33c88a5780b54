import numpy as np

import motioncodes as mc
from motioncodes.figures import (
    save_analysis_figures,
    save_embedding_figure,
    save_prismatic_figure,
    save_revolute_figure,
)

from conftest import make_trajectory, rotation_sequence


def sample_trajectory():
    t = np.linspace(0, 6 * np.pi, 120)
    positions = np.column_stack([np.cos(t), np.sin(t), 0.05 * t])
    quats = rotation_sequence([0, 0, 1], np.radians(200), 120)
    return make_trajectory(positions, quaternions=quats, times=t)


def test_prismatic_figure(tmp_path):
    traj = sample_trajectory()
    analysis = mc.prismatic_analysis(traj)
    path = save_prismatic_figure(traj, analysis, tmp_path / "prismatic.png")
    assert path.stat().st_size > 1000


def test_revolute_figure(tmp_path):
    traj = sample_trajectory()
    analysis = mc.revolute_analysis(traj)
    path = save_revolute_figure(analysis, tmp_path / "revolute.png")
    assert path.stat().st_size > 1000


def test_embedding_figure(tmp_path):
    embedding = mc.Embedding2D(
        ("a", "b", "c"),
        np.array([[0.0, 0.0], [1.0, 2.0], [-1.0, 1.0]]),
        np.array([1.0]),
    )
    path = save_embedding_figure(embedding, tmp_path / "embedding.png", title="demo")
    assert path.stat().st_size > 1000


def test_analysis_figures_bundle(tmp_path):
    traj = sample_trajectory()
    paths = save_analysis_figures(
        traj,
        mc.prismatic_analysis(traj),
        mc.revolute_analysis(traj),
        tmp_path / "figs",
        stem="demo",
    )
    assert [p.name for p in paths] == ["demo_prismatic.png", "demo_revolute.png"]
    assert all(p.exists() for p in paths)
