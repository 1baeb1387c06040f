import pytest

from planar_emulator.errors import SpecInfeasible
from planar_emulator.generators import InstanceSpec, gen_instance, suite, two_ring


def _fingerprint(inst):
    g = inst.graph
    return (sorted((e.u, e.v, e.w) for e in g.edges.values()), [f.terminals for f in inst.faces])


def test_same_spec_same_instance():
    spec = InstanceSpec(kind="random-planar", width=12, height=7, f=3, k=9, seed=12)
    assert _fingerprint(gen_instance(spec)) == _fingerprint(gen_instance(spec))
    other = InstanceSpec(kind="random-planar", width=12, height=7, f=3, k=9, seed=13)
    assert _fingerprint(gen_instance(spec)) != _fingerprint(gen_instance(other))


@pytest.mark.parametrize("spec", [
    InstanceSpec(f=3, k=2),
    InstanceSpec(width=4, height=4, f=3, k=6),
    InstanceSpec(width=4, height=4, f=1, k=40),
    InstanceSpec(f=2, terminals=[3]),
])
def test_impossible_specs(spec):
    with pytest.raises(SpecInfeasible):
        gen_instance(spec)


def test_explicit_terminal_counts():
    inst = gen_instance(InstanceSpec(width=12, height=8, f=3, terminals=[5, 2, 1], seed=4))
    assert [len(f.terminals) for f in inst.faces] == [5, 2, 1]
    assert inst.faces[0].is_outer and not any(f.is_outer for f in inst.faces[1:])


def test_rational_weights():
    inst = gen_instance(InstanceSpec(width=6, height=6, f=1, k=4, weights="rational", seed=2))
    assert any(e.w.denominator > 1 for e in inst.graph.edges.values())
    assert all(e.w > 0 for e in inst.graph.edges.values())


def test_suite_shape():
    specs = suite(50)
    assert len(specs) == 50
    assert {s.f for s in specs} == {1, 2, 3}
    assert {s.kind for s in specs} == {"grid-ring", "random-planar"}
    assert all(s.k <= 12 for s in specs)
    assert [s.to_dict() for s in specs] == [s.to_dict() for s in suite(50)]


def test_spec_round_trip():
    spec = InstanceSpec(kind="random-planar", f=2, k=5, seed=9)
    assert InstanceSpec.from_dict({**spec.to_dict(), "unknown": 1}) == spec


def test_two_ring():
    inst = two_ring()
    assert inst.f == 2 and len(inst.terminals) == 8
    assert inst.graph.euler_ok()
