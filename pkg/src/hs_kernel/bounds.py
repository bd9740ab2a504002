"""Kernel size bounds, shared by the pipelines, the stats table and the tests."""


def below_m_bound(k: int) -> int:
    """k·4^k: cap on both vertices and edges of a below-m kernel."""
    return k * 4**k if k > 0 else 0


def below_n_vertex_bound(d: int, k: int) -> int:
    """Largest vertex count allowed by n < (d+1)k."""
    return max((d + 1) * k - 1, 0)


def below_n_edge_bound(d: int, n: int) -> int:
    """m ≤ d·n for a d-degenerate kernel on n vertices."""
    return d * n


def nonblocker_bound(k: int) -> int:
    """3k − 1 vertices."""
    return max(3 * k - 1, 0)


def nonblocker_quadratic_bound(k: int) -> int:
    """k² + k − 1 vertices."""
    return max(k * k + k - 1, 0)
