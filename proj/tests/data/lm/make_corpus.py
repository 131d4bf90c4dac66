#!/usr/bin/env python3
"""Regenerates corpus1000.txt: 1,000 template sentences with names and numbers."""
import random

rng = random.Random(1995)
subjects = ["the company", "the deficit", "a spokesman", "the government", "she", "he", "they",
            "the market", "the American company", "investors", "the bank", "analysts"]
names = ["Smith", "Jones", "Perkin", "Elmer", "Tanaka", "Brown"]
verbs = ["rose", "fell", "said", "reported", "expected", "charged", "bought", "sold", "grew", "declined"]
objects = ["the car", "profits", "the shares", "a loss", "the plan", "its stake", "the deficit",
           "higher prices", "the report", "potatoes", "photos"]
tails = ["yesterday", "in 1989", "last year", "by 12 %", "on Monday", "sharply", "", "", ""]

lines = []
for _ in range(1000):
    kind = rng.random()
    subj = rng.choice(subjects)
    if kind < 0.2:
        subj = "Mr. " + rng.choice(names)
    words = [subj, rng.choice(verbs)]
    if rng.random() < 0.7:
        words.append(rng.choice(objects))
    if rng.random() < 0.3:
        words += ["that", rng.choice(subjects), rng.choice(verbs), rng.choice(objects)]
    tail = rng.choice(tails)
    if tail:
        words.append(tail)
    s = " ".join(words)
    lines.append(s[0].upper() + s[1:] + ".")
open("corpus1000.txt", "w").write("\n".join(lines) + "\n")
