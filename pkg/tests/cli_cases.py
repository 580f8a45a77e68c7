"""CLI invocations with frozen golden outputs (tests/golden/<name>.txt)."""

import os

DATA = os.path.join(os.path.dirname(__file__), "data")


def g(name):
    return os.path.join(DATA, name)


CASES = {
    "classify_e8": ["classify", g("e8.graph")],
    "classify_twisted": ["classify", g("twisted_star.graph")],
    "discrepancies_chain": ["discrepancies", g("chain23.graph")],
    "sfr_e8_p7": ["sfr", g("e8.graph"), "--p", "7"],
    "sfr_e8_sweep": ["sfr", g("e8.graph"), "--p-sweep", "2,3,5,7,11,13", "--format", "kv"],
    "sfr_a1_p2": ["sfr", g("a1.graph"), "--p", "2"],
    "sfr_triple_p3": ["sfr", g("triple_insep.graph"), "--p", "3"],
    "sfr_cycle": ["sfr", g("cycle.graph"), "--p", "7"],
    "tame_e8_p7": ["tame-plan", g("e8.graph"), "--p", "7"],
    "tame_d5_p3": ["tame-plan", g("d5.graph"), "--p", "3"],
    "tame_e8_p5": ["tame-plan", g("e8.graph"), "--p", "5"],
    "p1_235_p5": ["p1split", "--p", "5", "--weights", "2,3,5", "--oracle"],
    "p1_lambda_p7": ["p1split", "--p", "7", "--lambda", "1", "--oracle"],
    "p1_lambda_p5": ["p1split", "--p", "5", "--lambda", "1", "--oracle"],
    "p1_226_regular": ["p1split", "--p", "3", "--weights", "2,2,6", "--regular", "--oracle", "--emax", "5"],
    "p1_333_f49": ["p1split", "--p", "7", "--q", "49", "--weights", "3,3,3", "--oracle", "--emax", "2"],
    "cartier_2_2_8": ["cartier", "--p", "2", "--vars", "2", "--degmax", "8", "--levels", "2"],
    "cartier_f9": ["cartier", "--p", "3", "--q", "9", "--vars", "2", "--degmax", "9", "--levels", "2", "--i", "1"],
    "campana_small": ["campana", "--n", "3", "--split", "1", "--coeffs", "1/2,2/3", "--i", "1", "--m", "2"],
    "rdpcert_235_hand": ["rdpcert", "--type", "2,3,5", "--rows", "hand"],
    "rdpcert_233": ["rdpcert", "--type", "2,3,3", "--box", "12"],
    "rdpcert_224": ["rdpcert", "--type", "2,2,4", "--format", "kv"],
    "corpus_seed1": ["corpus", "--seed", "1", "--format", "kv"],
    "parse_error": ["classify", g("duplicate.graph")],
    "usage_error": ["sfr", g("e8.graph"), "--p", "4"],
}
