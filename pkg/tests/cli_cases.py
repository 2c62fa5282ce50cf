"""CLI invocations with golden output; paths are relative to the bundled fixtures."""

CASES = {
    "check_bakery": (["check", "baking_row.cell"], 0),
    "eval_bakery": (["eval", "baking_row.cell"], 0),
    "eval_bakery_json": (["eval", "baking_row.cell", "--json"], 0),
    "normalize_yank": (["normalize", "yank1.cell", "--trace"], 0),
    "normalize_rows": (["normalize", "baking_row.cell:mixer", "--rows"], 0),
    "equal_yank": (["equal", "yank1.cell", "vid_A.cell"], 0),
    "equal_loaves": (["equal", "two_loaves.ws:together", "two_loaves.ws:one_by_one"], 0),
    "cross": (["cross", "oven", "flour^o * water^*", "--theory", "baking.theory"], 0),
    "adapt": (["adapt", "water^o * flour^o", "flour^o * water^o", "--theory", "baking.theory"], 0),
    "adapt_none": (["adapt", "A^o * B^*", "B^* * A^o"], 1),
    "dualize": (["dualize", "money_baking.theory"], 0),
    "dualize_plain": (["dualize", "baking.theory"], 2),
    "reversal": (["reversal", "flour", "--theory", "money_baking.theory"], 0),
    "balance_market": (["balance", "money_baking.ws"], 0),
    "simulate_bakery": (["simulate", "baking_row.cell"], 0),
    "simulate_bakery_json": (["simulate", "baking_row.cell", "--emit", "json"], 0),
    "simulate_supper_exact": (["simulate", "lemma_row.ws"], 2),
    "simulate_supper_lemma": (["simulate", "lemma_row.ws", "--mode", "lemma", "--replay"], 0),
    "render_bakery": (["render", "baking_row.cell"], 0),
    "json_yank": (["json", "yank1.cell"], 0),
}
