from dehncol.invariant import PhiMultiset
from dehncol.palettes import kernel_analysis
from dehncol.plotting import plot_boundary_matrix, plot_palette_sizes, plot_phi

PNG = b"\x89PNG"


def test_plots_write_png(tmp_path):
    paths = [
        plot_phi(PhiMultiset(7, "nt", {3: 98, 5: 98, 6: 98}), tmp_path / "phi.png"),
        plot_boundary_matrix(kernel_analysis((0, 1, 2, 3, 6), 11), tmp_path / "sub" / "m.png"),
        plot_boundary_matrix(kernel_analysis((0, 1), 11), tmp_path / "empty.png"),
        plot_palette_sizes([5, 5, 6], 7, tmp_path / "h.png", lower=4),
        plot_palette_sizes([], 7, tmp_path / "h0.png"),
    ]
    for p in paths:
        assert p.read_bytes()[:4] == PNG
