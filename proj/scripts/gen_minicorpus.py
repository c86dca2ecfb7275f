#!/usr/bin/env python3
"""Generates the bundled synthetic mini-corpus (20 posts, 150 comments).

Deterministic: fixed seed, fixed templates. Rerunning overwrites
data/minicorpus/posts.jsonl and comments.jsonl in place.
"""
import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "minicorpus"

RELS = ["sister", "brother", "mom", "dad", "friend", "roommate", "cousin", "neighbor"]

# (template, subject_is_author, weight); higher weight = quoted more often
SENTENCES = [
    ("I yelled at my {rel}.", True, 4),
    ("I screamed at my {rel}.", True, 4),
    ("My {rel} yelled at me.", False, 4),
    ("My {rel} stole my money.", False, 4),
    ("I pushed my {rel}.", True, 4),
    ("My {rel} threatened me.", False, 4),
    ("I paid the bill.", True, 1),
    ("I helped my {rel}.", True, 1),
    ("My {rel} invited me to the party.", False, 1),
    ("I left the party early.", True, 1),
    ("She lied to me.", False, 1),
    ("My {rel} ignored me.", False, 1),
    ("I forgot the birthday.", True, 1),
    ("My {rel} paid the rent.", False, 1),
    ("I told my {rel} the truth.", True, 1),
    ("I watched a movie yesterday.", True, 1),
    ("My {rel} borrowed my car.", False, 1),
    ("I broke the phone.", True, 1),
    ("I blamed my {rel}.", True, 1),
    ("I ruined the dinner.", True, 1),
    ("I refused to apologize.", True, 1),
    ("I abandoned the plan.", True, 1),
]

INTRO = ("This happened last weekend and I have been thinking about the whole "
         "situation every single day since then.")
OUTRO = ("Everyone in the family has an opinion about this and now I honestly "
         "need some outside judgment on the entire mess.")

BLAME_LONG = [
    "{v} because honestly your {rel} was completely out of line and you both deserve way better than this.",
    "{v} here, that behavior crossed every possible line and nobody should have to put up with it at all.",
    "{v} for sure, reading this made me angry on your behalf and the details only make it worse overall.",
]
EXON_LONG = [
    "{v} honestly, anyone in that situation would have done the exact same thing without thinking twice about it.",
    "{v} in my opinion, this reads like a normal reaction to a stressful week and nothing more than that.",
    "{v} clearly, the whole thing sounds like an honest mistake and people need to relax about it already.",
]
NONQUOTE_LONG = [
    "NTA you did a reasonable thing here and anyone who says otherwise has clearly never dealt with family drama before.",
    "ESH to be honest, everyone in this story behaved badly and the whole situation could have been avoided entirely.",
    "YTA in my view, the way this was handled shows a real lack of consideration for everybody else involved here.",
]
SHORT = ["YTA obviously.", "NTA clearly.", "ESH honestly."]
NOVERDICT = [
    "This is such a wild story, thanks for sharing all of the details with everyone here on the subreddit today.",
    "I have read this three times now and I still cannot decide what I actually think about any of it.",
]
TITLES = [
    "AITA for how I handled things with my {rel}?",
    "AITA for what happened at the party with my {rel}?",
    "AITA after the argument with my {rel} last weekend?",
]


def main(seed=9):
    rng = random.Random(seed)
    posts = []
    comments = []
    cid = 0

    weighted = []
    for idx, (tpl, author, w) in enumerate(SENTENCES):
        weighted.extend([idx] * w)

    for p in range(20):
        pid = f"p{p:02d}"
        rel = RELS[p % len(RELS)]
        picks = rng.sample(range(len(SENTENCES)), 10)
        body_sents = [SENTENCES[i][0].format(rel=rel) for i in picks]
        body = INTRO + "\n" + "\n".join(body_sents) + "\n" + OUTRO
        posts.append({
            "id": pid,
            "author_id": f"author_{p}",
            "created_utc": 1600000000 + p * 86400,
            "title": TITLES[p % len(TITLES)].format(rel=rel),
            "body": body,
            "deleted": False,
            "moderator": False,
        })

        n_comments = 11 if p < 10 else 4
        aggressive_pool = [i for i in picks if SENTENCES[i][2] > 1]
        neutral_pool = [i for i in picks if SENTENCES[i][2] == 1]
        for k in range(n_comments):
            cid += 1
            cm = {
                "id": f"c{cid:03d}",
                "link_id": pid,
                "parent_id": pid,
                "author_id": f"commenter_{cid}",
                "body": "",
                "deleted": False,
                "moderator": False,
                "score": rng.randint(-3, 40),
            }
            if p < 10 and k < 8:
                if aggressive_pool and (not neutral_pool or rng.random() < 0.55):
                    si = rng.choice(aggressive_pool)
                else:
                    si = rng.choice(neutral_pool)
                sent = SENTENCES[si][0].format(rel=rel)
                subject_author = SENTENCES[si][1]
                aggressive = SENTENCES[si][2] > 1
                blame = aggressive if rng.random() > 0.2 else not aggressive
                if blame:
                    v = "YTA" if subject_author else "NTA"
                    line = rng.choice(BLAME_LONG).format(v=v, rel=rel)
                else:
                    v = "NTA" if subject_author else "YTA"
                    line = rng.choice(EXON_LONG).format(v=v, rel=rel)
                cm["body"] = "> " + sent + "\n" + line
            elif k == n_comments - 3:
                cm["body"] = rng.choice(NONQUOTE_LONG)
            elif k == n_comments - 2:
                cm["body"] = rng.choice(SHORT)
            else:
                cm["body"] = rng.choice(NOVERDICT)
            comments.append(cm)

    # a few records that only exercise the filters
    posts[17]["deleted"] = True
    posts[17]["author_id"] = "[deleted]"
    posts[18]["moderator"] = True
    comments[-1]["parent_id"] = comments[-2]["id"]  # nested reply

    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "posts.jsonl", "w") as f:
        for p in posts:
            f.write(json.dumps(p) + "\n")
    with open(OUT / "comments.jsonl", "w") as f:
        for c in comments:
            f.write(json.dumps(c) + "\n")
    print(f"wrote {len(posts)} posts, {len(comments)} comments to {OUT}")


if __name__ == "__main__":
    import sys
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 9)
