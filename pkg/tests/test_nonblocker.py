import hypothesis.strategies as st
import pytest  # type: ignore
from hypothesis import given, settings

from hs_kernel.bounds import nonblocker_bound, nonblocker_quadratic_bound
from hs_kernel.errors import InvalidWitnessError, PreconditionError
from hs_kernel.hypercore import (
    Digraph,
    Hypergraph,
    delete_vertex,
    is_dominating_set,
    is_hitting_set,
)
from hs_kernel.kernel_below_n import BelowNInstance
from hs_kernel.nonblocker import (
    IsolatedDeleted,
    NonblockerInstance,
    SourcesContracted,
    complete_nonblocker,
    contract_sources,
    dominating_two_thirds,
    high_outdegree_rule,
    hitting_set_third,
    kernelize_nonblocker,
    kernelize_nonblocker_quadratic,
    lift_witness_nb,
    preprocess,
    replay_nonblocker,
    strip_isolated,
    to_hitting_set,
)
from hs_kernel.oracles import min_dominating_set
from hs_kernel.outcome import Decided, Kernel
from tests.conftest import digraphs


@pytest.fixture
def two_sources() -> Digraph:
    """Arcs 1->3, 2->3, 3->4."""
    return Digraph(frozenset({1, 2, 3, 4}), frozenset({(1, 3), (2, 3), (3, 4)}))


@pytest.fixture
def star() -> Digraph:
    """Centre 1 with arcs to 2..6."""
    return Digraph(frozenset(range(1, 7)), frozenset((1, v) for v in range(2, 7)))


@st.composite
def proper_hypergraphs(
    draw: st.DrawFn, max_n: int = 9, max_m: int = 10
) -> Hypergraph:
    """Hypergraphs whose edges all have at least two vertices."""
    n = draw(st.integers(min_value=2, max_value=max_n))
    vertex = st.integers(min_value=1, max_value=n)
    edge = st.frozensets(vertex, min_size=2, max_size=min(4, n))
    edges = draw(st.lists(edge, max_size=max_m))
    return Hypergraph.from_edges(edges, range(1, n + 1))


class TestPreprocess:
    """Tests for strip_isolated and contract_sources."""

    def test_strip_isolated(self) -> None:
        """Vertex 3 has no arcs at all."""
        d = Digraph(frozenset({1, 2, 3}), frozenset({(1, 2)}))
        stripped, steps = strip_isolated(NonblockerInstance(d, 1))
        assert steps == (IsolatedDeleted(3),)
        assert stripped.digraph.vertices == {1, 2}
        assert stripped.k == 1

    def test_contract_two_sources(self, two_sources: Digraph) -> None:
        """Sources 1 and 2 become the fresh vertex 5."""
        fired = contract_sources(NonblockerInstance(two_sources, 1))
        assert fired is not None
        contracted, step = fired
        assert step == SourcesContracted(frozenset({1, 2}), 5)
        assert contracted.digraph.vertices == {3, 4, 5}
        assert contracted.digraph.arcs == {(5, 3), (3, 4)}
        assert contracted.digraph.sources == (5,)

    def test_single_source_untouched(self, star: Digraph) -> None:
        """One source is left alone."""
        assert contract_sources(NonblockerInstance(star, 2)) is None

    def test_contract_needs_stripping(self) -> None:
        """Isolated vertices must go first."""
        d = Digraph(frozenset({1, 2, 3}), frozenset({(1, 2)}))
        with pytest.raises(PreconditionError):
            contract_sources(NonblockerInstance(d, 1))

    def test_preprocess_and_replay(self, two_sources: Digraph) -> None:
        """Replaying the preprocessing trace gives the same digraph."""
        d = Digraph(two_sources.vertices | {9}, two_sources.arcs)
        inst = NonblockerInstance(d, 2)
        reduced, trace = preprocess(inst)
        assert trace == (IsolatedDeleted(9), SourcesContracted(frozenset({1, 2}), 10))
        assert replay_nonblocker(inst, trace) == reduced

    @given(digraphs(max_n=7))
    @settings(max_examples=100)
    def test_nonblocker_value_preserved(self, d: Digraph) -> None:
        """n - gamma is unchanged by stripping and contracting."""
        reduced, _ = preprocess(NonblockerInstance(d, 0))
        assert reduced.digraph.isolated == ()
        assert len(reduced.digraph.sources) <= 1
        before = d.n - min_dominating_set(d).optimum
        after = reduced.digraph.n - min_dominating_set(reduced.digraph).optimum
        assert before == after


class TestHighOutdegree:
    """Tests for high_outdegree_rule."""

    def test_star_centre(self, star: Digraph) -> None:
        """The centre dominates five others."""
        assert high_outdegree_rule(NonblockerInstance(star, 5)) == Decided(
            True, frozenset({1})
        )

    def test_absent(self, directed_triangle: Digraph) -> None:
        """Out-degree 1 is below k=2."""
        assert high_outdegree_rule(NonblockerInstance(directed_triangle, 2)) is None


class TestToHittingSet:
    """Tests for to_hitting_set."""

    def test_directed_triangle(self, directed_triangle: Digraph) -> None:
        """Edge v is the closed in-neighborhood of v."""
        h = to_hitting_set(directed_triangle)
        assert h.edges == {
            1: frozenset({1, 3}),
            2: frozenset({1, 2}),
            3: frozenset({2, 3}),
        }

    @given(digraphs(max_n=6), st.data())
    @settings(max_examples=100)
    def test_hitting_equals_dominating(self, d: Digraph, data: st.DataObject) -> None:
        """S hits the image exactly when S dominates D."""
        chosen = data.draw(st.frozensets(st.sampled_from(sorted(d.vertices))))
        h = to_hitting_set(d)
        assert is_hitting_set(h, chosen) == is_dominating_set(d, chosen)


class TestHittingSetThird:
    """Tests for hitting_set_third and dominating_two_thirds."""

    def test_triangle(self, triangle: Hypergraph) -> None:
        """Two picks: (3 + 3) / 3 = 2."""
        chosen = hitting_set_third(triangle)
        assert is_hitting_set(triangle, chosen)
        assert len(chosen) <= 2

    def test_unit_edge_taken_first(self) -> None:
        """A unit edge {1} with 1 in another edge is allowed."""
        h = Hypergraph.from_edges([{1}, {1, 2}, {2, 3}])
        chosen = hitting_set_third(h)
        assert 1 in chosen
        assert is_hitting_set(h, chosen)

    def test_two_unit_edges_rejected(self) -> None:
        """At most one unit edge."""
        h = Hypergraph.from_edges([{1}, {2}, {1, 2}])
        with pytest.raises(PreconditionError):
            hitting_set_third(h)

    def test_lonely_unit_edge_rejected(self) -> None:
        """The unit vertex must lie in another edge."""
        with pytest.raises(PreconditionError):
            hitting_set_third(Hypergraph.from_edges([{1}, {2, 3}]))

    def test_empty_edge_rejected(self) -> None:
        """Empty edges cannot be hit."""
        h = delete_vertex(Hypergraph.from_edges([{1}, {2, 3}]), 1)
        with pytest.raises(PreconditionError):
            hitting_set_third(h)

    @given(proper_hypergraphs())
    @settings(max_examples=150)
    def test_bound_holds(self, h: Hypergraph) -> None:
        """Size at most (n + m) / 3 on edges of size two or more."""
        chosen = hitting_set_third(h)
        assert is_hitting_set(h, chosen)
        assert 3 * len(chosen) <= h.n + h.m

    def test_dominating_directed_triangle(self, directed_triangle: Digraph) -> None:
        """{1, 2} dominates the directed triangle."""
        assert dominating_two_thirds(directed_triangle) == {1, 2}

    def test_dominating_rejects_two_sources(self, two_sources: Digraph) -> None:
        """Contract sources first."""
        with pytest.raises(PreconditionError):
            dominating_two_thirds(two_sources)

    @given(digraphs(max_n=8))
    @settings(max_examples=150)
    def test_dominating_bound(self, d: Digraph) -> None:
        """At most 2n/3 vertices after preprocessing."""
        fresh = d.n + 1
        anchored = Digraph(d.vertices | {fresh}, d.arcs | {(1, fresh)})
        reduced, _ = preprocess(NonblockerInstance(anchored, 0))
        digraph = reduced.digraph
        assert digraph.n >= 2
        chosen = dominating_two_thirds(digraph)
        assert is_dominating_set(digraph, chosen)
        assert 3 * len(chosen) <= 2 * digraph.n


class TestKernelize:
    """Tests for kernelize_nonblocker."""

    def test_triangle_k1(self, directed_triangle: Digraph) -> None:
        """n >= 3k: the 2n/3 set decides YES."""
        outcome = kernelize_nonblocker(NonblockerInstance(directed_triangle, 1))
        assert outcome == Decided(True, frozenset({1, 2}))

    def test_triangle_k2(self, directed_triangle: Digraph) -> None:
        """The triangle is a kernel with answer NO."""
        outcome = kernelize_nonblocker(NonblockerInstance(directed_triangle, 2))
        assert isinstance(outcome, Kernel)
        assert outcome.instance.digraph == directed_triangle
        assert complete_nonblocker(outcome) == Decided(False)

    def test_star_k5(self, star: Digraph) -> None:
        """The centre alone dominates: gamma = 1 = 6 - 5."""
        outcome = kernelize_nonblocker(NonblockerInstance(star, 5))
        assert isinstance(outcome, Kernel)
        assert complete_nonblocker(outcome) == Decided(True, frozenset({1}))

    def test_contracted_sources_lifted(self, two_sources: Digraph) -> None:
        """The merged vertex is expanded back into 1 and 2."""
        outcome = kernelize_nonblocker(NonblockerInstance(two_sources, 1))
        assert outcome == Decided(True, frozenset({1, 2, 3}))

    def test_k_zero(self, directed_triangle: Digraph) -> None:
        """k <= 0 takes every vertex."""
        outcome = kernelize_nonblocker(NonblockerInstance(directed_triangle, 0))
        assert outcome == Decided(True, frozenset({1, 2, 3}))

    def test_k_above_n(self, directed_triangle: Digraph) -> None:
        """n - k < 0."""
        outcome = kernelize_nonblocker(NonblockerInstance(directed_triangle, 4))
        assert outcome == Decided(False)

    def test_isolated_only(self) -> None:
        """Every vertex is isolated and must dominate itself."""
        d = Digraph(frozenset({1, 2}), frozenset())
        assert kernelize_nonblocker(NonblockerInstance(d, 1)) == Decided(False)

    def test_replay_reproduces_kernel(self, two_sources: Digraph) -> None:
        """The kernel of 1->3, 2->3, 3->4 with k=2 is 5->3->4."""
        inst = NonblockerInstance(two_sources, 2)
        outcome = kernelize_nonblocker(inst)
        assert isinstance(outcome, Kernel)
        assert replay_nonblocker(inst, outcome.trace) == outcome.instance
        assert complete_nonblocker(outcome) == Decided(False)

    @given(digraphs(max_n=8), st.data())
    @settings(max_examples=150, deadline=None)
    def test_decision_matches_exact(self, d: Digraph, data: st.DataObject) -> None:
        """Kernelize then solve agrees with solving the original."""
        k = data.draw(st.integers(min_value=-1, max_value=d.n + 1))
        inst = NonblockerInstance(d, k)
        outcome = kernelize_nonblocker(inst)
        if isinstance(outcome, Kernel):
            assert outcome.instance.digraph.n <= nonblocker_bound(k)
        decided = complete_nonblocker(outcome)
        assert decided.answer == (min_dominating_set(d).optimum <= inst.target)
        if decided.answer:
            assert decided.witness is not None
            assert is_dominating_set(d, decided.witness)
            assert len(decided.witness) <= inst.target


class TestKernelizeQuadratic:
    """Tests for kernelize_nonblocker_quadratic."""

    def test_star_by_outdegree(self, star: Digraph) -> None:
        """Out-degree 5 >= k decides at once."""
        outcome = kernelize_nonblocker_quadratic(NonblockerInstance(star, 5))
        assert outcome == Decided(True, frozenset({1}))

    def test_triangle_k2(self, directed_triangle: Digraph) -> None:
        """The image triangle is a below-n kernel with answer NO."""
        outcome = kernelize_nonblocker_quadratic(
            NonblockerInstance(directed_triangle, 2)
        )
        assert isinstance(outcome, Kernel)
        assert isinstance(outcome.instance, BelowNInstance)
        assert complete_nonblocker(outcome) == Decided(False)

    @given(digraphs(max_n=7), st.data())
    @settings(max_examples=150, deadline=None)
    def test_agrees_with_linear(self, d: Digraph, data: st.DataObject) -> None:
        """Both kernels give the same answer as the exact solver."""
        k = data.draw(st.integers(min_value=0, max_value=d.n + 1))
        inst = NonblockerInstance(d, k)
        outcome = kernelize_nonblocker_quadratic(inst)
        if isinstance(outcome, Kernel):
            assert outcome.instance.hypergraph.n <= nonblocker_quadratic_bound(k)
        quadratic = complete_nonblocker(outcome)
        linear = complete_nonblocker(kernelize_nonblocker(inst))
        assert quadratic.answer == linear.answer
        assert quadratic.answer == (min_dominating_set(d).optimum <= inst.target)
        if quadratic.answer:
            assert quadratic.witness is not None
            assert is_dominating_set(d, quadratic.witness)


class TestLiftWitness:
    """Tests for lift_witness_nb."""

    def test_expands_merged_source(self) -> None:
        """5 stands for 1 and 2."""
        trace = (SourcesContracted(frozenset({1, 2}), 5),)
        assert lift_witness_nb(trace, {4, 5}) == {1, 2, 4}

    def test_adds_isolated(self) -> None:
        """Isolated vertices dominate themselves."""
        assert lift_witness_nb((IsolatedDeleted(7),), {1}) == {1, 7}

    def test_missing_merged_vertex(self) -> None:
        """Sources are only dominated through the merged vertex."""
        trace = (SourcesContracted(frozenset({1, 2}), 5),)
        with pytest.raises(InvalidWitnessError):
            lift_witness_nb(trace, {4})

    def test_rejects_non_dominating(self, directed_triangle: Digraph) -> None:
        """The kernel witness is checked when the kernel is given."""
        with pytest.raises(InvalidWitnessError):
            lift_witness_nb((), {1}, NonblockerInstance(directed_triangle, 1))
