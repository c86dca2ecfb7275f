#!/usr/bin/env python3
"""Generates the 200-record filter-fixture corpus (40 posts + 160 comments).

Every body is built from plain space-separated words so the word counts are
unambiguous. Prints the expected stage counts for the filter funnel.
"""
import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "corpus200"


def body(n, prefix=""):
    toks = ([prefix] if prefix else []) + [f"w{i}" for i in range(n - (1 if prefix else 0))]
    return " ".join(toks)


def main():
    posts, comments = [], []
    cid = 0
    for p in range(40):
        pid = f"P{p:02d}"
        if p < 10:
            words = 49 if p == 3 else 55
        else:
            words = 30 if p % 2 else 60
        posts.append({
            "id": pid,
            "author_id": f"a{p}",
            "created_utc": 1600000000 + p,
            "title": "t",
            "body": body(words),
            "deleted": p == 9 or p == 36,
            "moderator": p == 38,
        })
        n_comments = 12 if p < 10 else (2 if p < 30 else 0)
        first_cid = None
        for k in range(n_comments):
            cid += 1
            c = {
                "id": f"C{cid:03d}",
                "link_id": pid,
                "parent_id": pid,
                "author_id": f"u{cid}",
                "body": "",
                "deleted": False,
                "moderator": False,
                "score": k,
            }
            if first_cid is None:
                first_cid = c["id"]
            if p < 10:
                if k <= 5:
                    # qualifying; k 0-2 quote a post sentence (post 8: no quotes)
                    if k <= 2 and p != 8:
                        c["body"] = "> w0 w1 w2 w3 w4\n" + body(12, "NTA")
                    else:
                        c["body"] = body(18, "NTA")
                elif k == 6:
                    c["body"] = body(14, "YTA")     # below word threshold
                elif k == 7:
                    c["body"] = body(18)            # no verdict
                elif k == 8:
                    c["body"] = body(18, "YTA")
                    c["deleted"] = True
                elif k == 9:
                    c["body"] = body(18, "YTA")
                    c["moderator"] = True
                elif k == 10:
                    c["body"] = body(18, "YTA")     # qualifying, no quote
                else:  # k == 11: nested reply
                    c["parent_id"] = first_cid
                    c["body"] = body(18, "NTA")
            else:
                c["body"] = body(18, "NTA")
            comments.append(c)

    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "posts.jsonl", "w") as f:
        for r in posts:
            f.write(json.dumps(r) + "\n")
    with open(OUT / "comments.jsonl", "w") as f:
        for r in comments:
            f.write(json.dumps(r) + "\n")

    # independent funnel computation
    def wc(s):
        return len([t for t in s.split() if any(ch.isalnum() for ch in t)])

    by_post = {}
    for c in comments:
        by_post.setdefault(c["link_id"], []).append(c)
    kept_posts = [p for p in posts
                  if not p["deleted"] and not p["moderator"] and wc(p["body"]) >= 50
                  and sum(1 for c in by_post.get(p["id"], []) if c["parent_id"] == p["id"]) >= 10]
    kept_ids = {p["id"] for p in kept_posts}
    s1 = (len(kept_posts), sum(1 for c in comments if c["link_id"] in kept_ids))

    def has_verdict(b):
        toks = {t.strip(".,!?:;()").lower() for t in b.split()}
        return toks & {"nta", "yta", "esh", "nah", "info"}

    qual = [c for c in comments if c["link_id"] in kept_ids
            and c["parent_id"] == c["link_id"] and not c["deleted"] and not c["moderator"]
            and wc(c["body"]) >= 15 and has_verdict(c["body"])]
    posts2 = {c["link_id"] for c in qual}
    s2 = (len(posts2), len(qual))

    quoting = [c for c in qual
               if any(l.lstrip().startswith(">") for l in c["body"].split("\n"))]
    posts3 = {c["link_id"] for c in quoting}
    s3 = (len(posts3), len(quoting))

    print(f"load: {len(posts)} posts, {len(comments)} comments")
    print(f"rule_based_collection: {s1}")
    print(f"comment_quality_filter: {s2}")
    print(f"quoting_comments_selection: {s3}")


if __name__ == "__main__":
    main()
