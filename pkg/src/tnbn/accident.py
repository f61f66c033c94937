"""A ready-made emergency-room network used by the demos, docs, and tests.

A car accident of some severity (node C) can cause head injury (HI) and
internal bleeding (IB). Those hidden conditions surface over the following
minutes as dilated pupils (PD) and unstable vital signs (VS). PD and VS are
temporal nodes: each abnormal state pairs the finding with the relative
interval, in minutes after the causing event, in which the change showed up,
and the default state "normal" means no change over the whole covered range.

PD covers 5 minutes in two intervals, [0,3] and [3,5]. VS covers an hour in
three, [0,10], [10,30] and [30,60]. Note the asymmetry in the VS table: a
head injury destabilizes vital signs almost immediately, while bleeding does
so later, and roughly in proportion to how gross it is.
"""

from __future__ import annotations

from .model import (
    ConditionalTable,
    NetworkSpec,
    NodeKind,
    NodeSpec,
    NodeState,
    TimeInterval,
)


def accident_network() -> NetworkSpec:
    """Build the five-node accident network."""
    c = NodeSpec("C", NodeKind.INSTANTANEOUS, ("severe", "moderate", "mild"))
    hi = NodeSpec("HI", NodeKind.INSTANTANEOUS, ("true", "false"))
    ib = NodeSpec("IB", NodeKind.INSTANTANEOUS, ("gross", "slight", "none"))
    pd = NodeSpec(
        "PD",
        NodeKind.TEMPORAL,
        ("dilated",),
        default_value="normal",
        intervals=(TimeInterval(0, 3), TimeInterval(3, 5)),
    )
    vs = NodeSpec(
        "VS",
        NodeKind.TEMPORAL,
        ("unstable",),
        default_value="normal",
        intervals=(TimeInterval(0, 10), TimeInterval(10, 30), TimeInterval(30, 60)),
    )

    severe, moderate, mild = (NodeState(v) for v in c.values)
    hi_true, hi_false = NodeState("true"), NodeState("false")
    gross, slight, none = (NodeState(v) for v in ib.values)

    tables = {
        "C": ConditionalTable("C", (), {(): (0.368, 0.392, 0.240)}),
        "HI": ConditionalTable(
            "HI",
            ("C",),
            {
                (severe,): (0.90, 0.10),
                (moderate,): (0.40, 0.60),
                (mild,): (0.10, 0.90),
            },
        ),
        "IB": ConditionalTable(
            "IB",
            ("C",),
            {
                (severe,): (0.50, 0.40, 0.10),
                (moderate,): (0.65, 0.15, 0.20),
                (mild,): (0.05, 0.60, 0.35),
            },
        ),
        # child order: normal, dilated@[0,3], dilated@[3,5]
        "PD": ConditionalTable(
            "PD",
            ("HI",),
            {
                (hi_true,): (0.05, 0.95, 0.00),
                (hi_false,): (0.95, 0.025, 0.025),
            },
        ),
        # child order: normal, unstable@[0,10], unstable@[10,30], unstable@[30,60]
        "VS": ConditionalTable(
            "VS",
            ("HI", "IB"),
            {
                (hi_true, gross): (0.05, 0.95, 0.00, 0.00),
                (hi_true, slight): (0.05, 0.95, 0.00, 0.00),
                (hi_true, none): (0.05, 0.95, 0.00, 0.00),
                (hi_false, gross): (0.05, 0.00, 0.95, 0.00),
                (hi_false, slight): (0.05, 0.00, 0.00, 0.95),
                (hi_false, none): (0.95, 1 / 60, 1 / 60, 1 / 60),
            },
        ),
    }
    return NetworkSpec(
        name="accident",
        time_unit="minute",
        nodes=(c, hi, ib, pd, vs),
        edges=(("C", "HI"), ("C", "IB"), ("HI", "PD"), ("HI", "VS"), ("IB", "VS")),
        tables=tables,
    )
