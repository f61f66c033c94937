"""
Scoring forecasts: how much does it matter what you get to see?
===============================================================

The harness samples a trajectory, reveals one tier of nodes to a session as
timed events, and scores the session's forecasts for the hidden rest.
Accuracy is all or nothing per node; RBS rescales the Brier score to 0..100,
so a coin flip over two states earns 75 and confident nonsense earns 0.

Two effects show up. Causes pin down their effects better than effects pin
down their causes, and symptom timestamps are anchored against each other
rather than against the unseen cause, so leaf-observed runs also carry
anchoring noise: misplaced intervals and reports dropped as inconsistent.
"""

from tnbn import accident_network, compile_network, evaluate, node_tiers

net = compile_network(accident_network())

tiers = node_tiers(net.spec)
print("tiers of the accident network:")
print("  roots:        ", ", ".join(tiers.roots))
print("  intermediates:", ", ".join(tiers.intermediates))
print("  leaves:       ", ", ".join(tiers.leaves))
print()

reports = {
    condition: evaluate(net, condition, trials=1000, seed=0)
    for condition in ("root-observed", "intermediate-observed", "leaf-observed")
}

for report in reports.values():
    print(report.format_table())
    print()

mid, leaf = reports["intermediate-observed"], reports["leaf-observed"]
print("knowing the hidden conditions beats reading the symptoms:")
print(f"  RBS      {mid.rbs_mean:6.2f} vs {leaf.rbs_mean:6.2f}")
print(f"  Accuracy {mid.accuracy_mean:6.2f} vs {leaf.accuracy_mean:6.2f}")
