#!/usr/bin/env python3
# Copyright 2026 The lopc Authors
# SPDX-License-Identifier: Apache-2.0
"""Freezes cl100k_base conformance vectors with an independent BPE.

The oracle is the Hugging Face `tokenizers` BPE model (Rust, Oniguruma regex)
built from the same rank file through transformers' TikTokenConverter. It
shares no code with the C++ tokenizer. Output: tests/data/cl100k_vectors.json.

    python3 tests/oracle/gen_cl100k_vectors.py data/cl100k_base.tiktoken \
        tests/data/cl100k_vectors.json
"""

import base64
import json
import random
import sys
import types


def load_ranks(path):
    ranks = {}
    with open(path, "rb") as f:
        for line in f.read().splitlines():
            tok, rank = line.split()
            ranks[base64.b64decode(tok)] = int(rank)
    return ranks


def build_oracle(rank_file):
    ranks = load_ranks(rank_file)
    # TikTokenConverter imports tiktoken only to read the rank file.
    fake = types.ModuleType("tiktoken.load")
    fake.load_tiktoken_bpe = lambda _path: ranks
    sys.modules.setdefault("tiktoken", types.ModuleType("tiktoken"))
    sys.modules["tiktoken.load"] = fake
    from transformers.convert_slow_tokenizer import TikTokenConverter

    tok = TikTokenConverter(vocab_file=rank_file).converted()
    tok.post_processor = None
    return tok


FIXED = [
    "",
    "hello world",
    "Hello, World!",
    "The quick brown fox jumps over the lazy dog.",
    "  leading spaces",
    "trailing spaces   ",
    "tabs\tand\nnewlines\r\nmixed",
    "\n\n\n",
    "   \n  \n",
    "I'm sure they'll say we've done it, it's John's and THEY'RE HERE. You'D",
    "'s 't 're 've 'm 'll 'd 'S 'T 'RE",
    "1234567890 12 1 123456",
    "3.14159 -42 +7 1e10 0x1F",
    "def foo(x):\n    return x ** 2  # square\n",
    "for (int i = 0; i < n; ++i) { sum += a[i]; }",
    '{"key": "value", "list": [1, 2, 3], "nested": {"a": null}}',
    "# Heading\n\n- item one\n- item two\n\n**bold** and _italic_ [link](http://x.y/z)",
    "<html><body><div class=\"main\">Text</div></body></html>",
    "日本語のテキストです。中文文本。한국어 텍스트.",
    "Привет, мир! Это тест.",
    "مرحبا بالعالم",
    "नमस्ते दुनिया",
    "Emoji: 😀🎉👍🏽 👨‍👩‍👧‍👦 🇺🇸",
    "Ünïcödé àccénts çedilla ñ ß ø å",
    "<|endoftext|> <|im_start|>user<|im_end|>",
    "a" * 65,
    " " * 64,
    "!!!!!!!!!!!!???????........,,,,,,;;;;;;",
    "$variable @decorator #hashtag %percent ^caret &amp *star",
    " ' '' ''' 'x 'll'll",
    "line1\n\nline3\n\n\nline6",
    "a b c　d",
    "zero​width‍joiner",
    "ﬁ ligature and ℌ\U0001d522\U0001d529\U0001d529\U0001d52c math letters",
    "Mixed123Numbers456and789Letters",
    "CamelCaseIdentifierNamesLikeThis and snake_case_names_like_this",
    "https://example.com/path/to/resource?query=1&other=two#fragment",
    "user@example.com, admin@test.org",
    "SELECT * FROM users WHERE id = 42 AND name LIKE '%smith%';",
    "    indented\n        more indented\n    back",
    "\r\r\n\n\r",
    "x" * 300,
    "ab" * 200,
    " the" * 100,
    "0123456789" * 20,
    "ſtring with long s 'ſ",
    "Ⅻ roman ⅷ numerals ² ³ ½",
    "tab\t\t\tseparated\tvalues",
    "end with newline\n",
    "́combining at start and é later",
]


def random_strings(rng, count):
    alphabet = (
        list("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789")
        + list(" \t\n\r'\".,;:!?()[]{}<>-_=+*/\\|@#$%^&~`")
        + ["é", "ß", "ж", "ω", "中", "語", "한", "😀", "👍", " ", "　", "٣", "Ⅻ", "ſ"]
    )
    out = []
    for _ in range(count):
        n = rng.randint(1, 80)
        out.append("".join(rng.choice(alphabet) for _ in range(n)))
    return out


def main():
    rank_file, dest = sys.argv[1], sys.argv[2]
    tok = build_oracle(rank_file)
    rng = random.Random(20260101)
    texts = FIXED + random_strings(rng, 200)
    vectors = [{"text": t, "ids": tok.encode(t, add_special_tokens=False).ids} for t in texts]
    with open(dest, "w", encoding="utf-8") as f:
        json.dump({"tokenizer": "cl100k_base", "vectors": vectors}, f, ensure_ascii=False)
        f.write("\n")
    print(f"wrote {len(vectors)} vectors to {dest}")


if __name__ == "__main__":
    main()
