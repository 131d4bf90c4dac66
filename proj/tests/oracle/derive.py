#!/usr/bin/env python3
"""Independent derivation oracle for the grammar fixtures.

Reads a grammar, lexicon, SPL input and optional exception table and prints
JSON with every sentence derivable for the goal category (one entry per
derivation, in rule/alternative/sense/form order) and the first-alternative
derivation. Shares no code with the C++ library.
"""
import argparse
import itertools
import json
import re
import sys

TOKEN = re.compile(r'\s*(?:(;[^\n]*)|(\()|(\))|"((?:[^"\\]|\\.)*)"|\|([^|]*)\||([^\s()";|]+))')


def read_sexprs(text):
    pos, stack, out = 0, [[]], None
    while pos < len(text):
        m = TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise SyntaxError("bad token at %d" % pos)
        pos = m.end()
        comment, lp, rp, string, bar, sym = m.groups()
        if comment is not None:
            continue
        if lp:
            stack.append([])
        elif rp:
            done = stack.pop()
            stack[-1].append(done)
        elif string is not None:
            stack[-1].append(("str", string.replace('\\"', '"').replace("\\\\", "\\")))
        elif bar is not None:
            stack[-1].append(("bar", bar))
        elif sym is not None:
            stack[-1].append(("sym", sym))
    if len(stack) != 1:
        raise SyntaxError("unbalanced parentheses")
    return stack[0]


def sym(x):
    return x[1] if isinstance(x, tuple) else None


def is_or(x):
    return isinstance(x, tuple) and x[1].lower() in ("or", "*or*")


def parse_expr(e, slots):
    if isinstance(e, tuple) and e[1] == "*":
        return ("eps",)
    head = sym(e[0])
    if head == "seq":
        return ("seq", [parse_expr(c, slots) for c in e[1:]])
    if is_or(e[0]):
        return ("or", [parse_expr(c, slots) for c in e[1:]])
    if head == "wrd":
        return ("wrd", e[1][1])
    if head in slots:
        if isinstance(e[1], list):
            return ("or", [("slot", head, sym(c)) for c in e[1][1:]])
        return ("slot", head, sym(e[1]))
    raise ValueError("bad expression %r" % (e,))


def load_grammar(text):
    inflections, rules = {}, []
    for form in read_sexprs(text):
        head = form[0]
        if sym(head) == "categories":
            continue
        if sym(head) == "inflect":
            inflections[(sym(form[1]), sym(form[2]))] = [sym(f) for f in form[3:]]
            continue
        arrow = [i for i, x in enumerate(form) if sym(x) == "->"][0]
        lhs = [(sym(s[0]), role_name(sym(s[1]))) for s in form[:arrow]]
        slots = {v for v, _ in lhs}
        rhs = [(sym(a[0]), parse_expr(a[1], slots)) for a in form[arrow + 1:]]
        rules.append((lhs, rhs))
    return inflections, rules


def load_lexicon(text):
    lex = {}
    for form in read_sexprs(text):
        lex[form[0][1]] = [(sym(s[0]), s[1][1], sym(s[2])) for s in form[1:]]
    return lex


def load_exceptions(text):
    table = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        lemma, feature, forms = line.split("\t")
        table[(lemma, feature)] = forms.split(",")
    return table


def role_name(r):
    r = r.lower()
    return r if r.startswith(":") else ":" + r


def parse_spl(text):
    toks = re.findall(r'\(|\)|\|[^|]*\||[^\s()]+', text)
    pos = 0

    def node():
        nonlocal pos
        assert toks[pos] == "("
        var, slash, concept = toks[pos + 1], toks[pos + 2], toks[pos + 3]
        assert slash == "/"
        pos += 4
        roles = []
        while toks[pos] != ")":
            role = role_name(toks[pos])
            pos += 1
            if toks[pos] == "(":
                roles.append((role, node()))
            else:
                roles.append((role, toks[pos]))
                pos += 1
        pos += 1
        return {"var": var, "concept": concept.strip("|"), "roles": roles}

    return node()


VOWELS = set("aeiou")


def consonant(c):
    return c.isalpha() and c.lower() not in VOWELS


def inflect(lemma, pos, feature, exceptions):
    if (lemma, feature) in exceptions:
        return list(dict.fromkeys(exceptions[(lemma, feature)]))
    ok = {"noun": {"plural"}, "verb": {"third-singular", "past", "past-participle"}}.get(pos, set())
    if feature == "citation" or feature not in ok:
        return [lemma]
    cy = len(lemma) >= 2 and lemma[-1] == "y" and consonant(lemma[-2])
    out = []
    if feature in ("plural", "third-singular"):
        sib = lemma.endswith(("s", "x", "z", "ch", "sh"))
        if not sib and not cy:
            out.append(lemma + "s")
        if sib or lemma.endswith("o"):
            out.append(lemma + "es")
        if cy:
            out.append(lemma[:-1] + "ies")
    else:
        if not lemma.endswith("e") and not cy:
            out.append(lemma + "ed")
        if (len(lemma) >= 3 and consonant(lemma[-1]) and lemma[-1] not in "wxy"
                and lemma[-2].lower() in VOWELS and consonant(lemma[-3])):
            out.append(lemma + lemma[-1] + "ed")
        if lemma.endswith("e"):
            out.append(lemma + "d")
        if cy:
            out.append(lemma[:-1] + "ied")
    return list(dict.fromkeys(out))


class Deriver:
    def __init__(self, inflections, rules, lexicon, exceptions):
        self.inflections, self.rules, self.lexicon, self.exceptions = inflections, rules, lexicon, exceptions

    def leaf(self, name):
        if name not in self.lexicon:
            raise KeyError(name)
        out = {}
        for cat, citation, pos in self.lexicon[name]:
            if " " in citation:
                sents = [citation.split()]
            else:
                forms = []
                for f in self.inflections.get((cat, pos), ["citation"]):
                    for form in inflect(citation, pos, f, self.exceptions):
                        if form not in forms:
                            forms.append(form)
                sents = [[f] for f in forms]
            out.setdefault(cat, []).extend(sents)
        return out

    def value(self, v):
        return self.leaf(v) if isinstance(v, str) else self.node(v)

    def node(self, n):
        if not n["roles"]:
            return self.leaf(n["concept"])
        present = {r for r, _ in n["roles"]}
        for lhs, rhs in self.rules:
            named = {r for _, r in lhs if r != ":rest"}
            has_rest = any(r == ":rest" for _, r in lhs)
            if not named <= present or (not has_rest and named != present):
                continue
            slots = {}
            for var, role in lhs:
                if role == ":rest":
                    rest = [(r, v) for r, v in n["roles"] if r not in named]
                    slots[var] = self.node({"var": n["var"], "concept": n["concept"], "roles": rest})
                else:
                    slots[var] = self.value(dict(n["roles"])[role])
            out = {}
            for cat, expr in rhs:
                sents = self.expr(expr, slots)
                if sents is not None:
                    out.setdefault(cat, []).extend(sents)
            if out:
                return out
        raise ValueError("no derivation for %s" % n["concept"])

    def expr(self, e, slots):
        kind = e[0]
        if kind == "eps":
            return [[]]
        if kind == "wrd":
            return [[e[1]]]
        if kind == "slot":
            return slots.get(e[1], {}).get(e[2])
        parts = [self.expr(c, slots) for c in e[1]]
        if kind == "seq":
            if any(p is None for p in parts):
                return None
            return [sum(combo, []) for combo in itertools.product(*parts)]
        alive = [p for p in parts if p is not None]
        return sum(alive, []) if alive else None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--grammar", required=True)
    ap.add_argument("--lexicon", required=True)
    ap.add_argument("--input", required=True)
    ap.add_argument("--exceptions")
    ap.add_argument("--goal", default="s")
    args = ap.parse_args()
    inflections, rules = load_grammar(open(args.grammar).read())
    lexicon = load_lexicon(open(args.lexicon).read())
    exceptions = load_exceptions(open(args.exceptions).read()) if args.exceptions else {}
    spl = parse_spl(open(args.input).read())
    sents = Deriver(inflections, rules, lexicon, exceptions).node(spl)[args.goal]
    json.dump({"default": sents[0], "sentences": sents}, sys.stdout)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
