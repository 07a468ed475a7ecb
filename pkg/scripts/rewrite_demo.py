"""Simplify a small ZX circuit with the greedy fusion strategy and show each step."""

from zxzw.diagram import hadamard, lambda_box, zspider
from zxzw.phase import Phase
from zxzw.rewrite import greedy_fuse, rule_matches
from zxzw.rules import get_rule
from zxzw.semantics import interpret, max_deviation


def main() -> None:
    d = zspider(1, 1, Phase.pi(1, 4)) >> hadamard() >> hadamard() >> zspider(1, 1, Phase.pi(1, 4)) >> lambda_box(1)
    print("start:", d)
    print("S1 sites before fusion:", [e.nodes for e in rule_matches(get_rule("S1"), d)])
    out, steps = greedy_fuse(d)
    for s in steps:
        print(f"  {s.rule} {s.dir} at {list(s.site)}")
    print("end  :", out)
    print(f"deviation: {max_deviation(interpret(d), interpret(out)):.1e}")


if __name__ == "__main__":
    main()
