"""Invariant suite over randomized corpora (hypothesis + seeded)."""

import random

from hypothesis import assume, given, strategies as st

import globflow as gf

from gen import brute_paths, random_script, relabel_atoms, subdivide_script


@st.composite
def flows(draw):
    n = draw(st.integers(min_value=1, max_value=5))
    states = [f"n{i}" for i in range(n)]
    atoms = []
    if n >= 2:
        for t in range(draw(st.integers(min_value=0, max_value=6))):
            i = draw(st.integers(min_value=0, max_value=n - 2))
            j = draw(st.integers(min_value=i + 1, max_value=n - 1))
            atoms.append((f"e{t}", states[i], states[j]))
    return gf.validate(gf.presentation(states, atoms))


@st.composite
def flows_with_composable_pair(draw):
    flow = draw(flows())
    pairs = sorted(
        (
            (p, q)
            for p in flow.paths
            for q in flow.paths
            if p.tgt == q.src
        ),
        key=lambda pq: (pq[0].sort_key(), pq[1].sort_key()),
    )
    assume(pairs)
    p, q = pairs[draw(st.integers(min_value=0, max_value=len(pairs) - 1))]
    return flow, p, q


@given(flows_with_composable_pair())
def test_composition_endpoint_laws(data):
    flow, p, q = data
    joined = gf.compose(flow, p, q)
    assert joined.src == p.src
    assert joined.tgt == q.tgt
    assert joined in flow.paths


@given(flows())
def test_associativity_everywhere(flow):
    triples = [
        (p, q, r)
        for p in flow.paths
        for q in flow.paths
        if p.tgt == q.src
        for r in flow.paths
        if q.tgt == r.src
    ]
    for p, q, r in triples:
        left = gf.compose(flow, gf.compose(flow, p, q), r)
        right = gf.compose(flow, p, gf.compose(flow, q, r))
        assert left == right


@given(flows())
def test_paths_are_finite_and_duplicate_free(flow):
    # acyclicity: no path revisits a state, so the enumeration closes
    for p in flow.paths:
        visited = [p.src]
        for aid in p.atoms:
            visited.append(flow.atom(aid).tgt)
        assert len(set(visited)) == len(visited)


@given(flows(), st.data())
def test_restriction_path_set_formula(flow, data):
    keep = data.draw(st.sets(st.sampled_from(sorted(flow.states))))
    restriction = gf.restrict(flow, keep)
    expanded = {gf.expand_path(p) for p in restriction.paths}
    assert expanded == {p for p in flow.paths if p.src in keep and p.tgt in keep}


@given(flows())
def test_branch_classes_are_closed_and_finest(flow):
    for direction in (gf.MINUS, gf.PLUS):
        computed = gf.branch_classes(flow, direction)
        # independent recomputation: connected components of the
        # extension relation, found by naive breadth-first closure
        for state, class_set in computed.items():
            anchored = {
                p
                for p in flow.paths
                if (p.src if direction == gf.MINUS else p.tgt) == state
            }
            edges = {p: set() for p in anchored}
            for p in anchored:
                for q in anchored:
                    if direction == gf.MINUS and q.atoms[: len(p.atoms)] == p.atoms:
                        edges[p].add(q)
                        edges[q].add(p)
                    if direction == gf.PLUS and q.atoms[-len(p.atoms):] == p.atoms:
                        edges[p].add(q)
                        edges[q].add(p)
            seen = set()
            components = []
            for start in anchored:
                if start in seen:
                    continue
                frontier = [start]
                component = set()
                while frontier:
                    node = frontier.pop()
                    if node in component:
                        continue
                    component.add(node)
                    frontier.extend(edges[node])
                seen |= component
                components.append(frozenset(component))
            assert set(class_set.classes) == set(components)


@given(flows())
def test_initial_final_agree_with_endpoint_scan(flow):
    assert gf.initial_states(flow) == flow.states - {p.tgt for p in flow.paths}
    assert gf.final_states(flow) == flow.states - {p.src for p in flow.paths}


@given(st.lists(st.integers(min_value=0, max_value=3), min_size=1, max_size=4))
def test_concat_product_law(sizes):
    blocks = [{f"b{j}x{t}" for t in range(size)} for j, size in enumerate(sizes)]
    flow = gf.concat(blocks)
    total = len(gf.paths_between(flow, "0", str(len(blocks))))
    product = 1
    for size in sizes:
        product *= size
    assert total == product


def test_relabeling_leaves_verdicts_unchanged():
    for seed in range(10):
        rng = random.Random(seed)
        scr = random_script(rng)
        subdivided, _ = subdivide_script(scr, rng)
        source = gf.build(scr)
        target = gf.build(subdivided)
        rename_source = {a.id: f"s{i}" for i, a in enumerate(source.atoms)}
        rename_source.update(
            {k: f"sw{i}" for i, k in enumerate(sorted(source.identifications))}
        )
        rename_target = {a.id: f"t{i}" for i, a in enumerate(target.atoms)}
        rename_target.update(
            {k: f"tw{i}" for i, k in enumerate(sorted(target.identifications))}
        )
        relabeled_source = relabel_atoms(source, rename_source)
        relabeled_target = relabel_atoms(target, rename_target)
        assert (gf.find_T_homotopy(source, target) is None) == (
            gf.find_T_homotopy(relabeled_source, relabeled_target) is None
        )
        assert (gf.is_isomorphic(source, target) is None) == (
            gf.is_isomorphic(relabeled_source, relabeled_target) is None
        )


def test_flow_path_sets_match_naive_enumeration_on_scripts():
    for seed in range(10):
        flow = gf.build(random_script(random.Random(seed)))
        arrows = [(a.id, a.src, a.tgt) for a in flow.atoms]
        expected = brute_paths(sorted(flow.states), arrows)
        grouped = {}
        for p in flow.paths:
            grouped.setdefault((p.src, p.tgt), set()).add(p.atoms)
        assert grouped == expected
