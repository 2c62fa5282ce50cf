"""The bakery and the market, end to end: compose, evaluate, trace, replay, balance."""

from cornering import fixtures
from cornering.compact import balance_ledger
from cornering.dsl import format_morphism
from cornering.render import summary
from cornering.simulate import compose_row, describe_boundaries, replay_concurrently, run


def show(title, ws, row_name):
    row = compose_row(ws.row_cells(row_name), "exact", ws.theory)
    history, trace = run(row)
    print(f"== {title}")
    print(summary(row))
    for line in describe_boundaries(row):
        print("  boundary", line)
    print("history:", format_morphism(history))
    for line in trace.lines():
        print("  " + line)
    log = replay_concurrently(row, trace)
    print("threaded replay respects the causal order:", trace.is_linear_extension(log))
    return history


def main() -> None:
    show("bakery", fixtures.baking_row(), "bakery")
    history = show("market", fixtures.money_row(), "market")
    _, report = balance_ledger(history, fixtures.money_baking())
    print("ledger:", report.to_json())


if __name__ == "__main__":
    main()
