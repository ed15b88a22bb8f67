"""Wire-contract conformance: 25 golden requests, every response validated
against the protocol's JSON schemas."""

import jsonschema
import pytest

PROBS = {
    "type": "object",
    "required": ["probs"],
    "additionalProperties": False,
    "properties": {
        "probs": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "minItems": 2,
                "items": {"type": "number", "minimum": 0.0, "maximum": 1.0},
            },
        }
    },
}

CANDIDATES = {
    "type": "object",
    "required": ["candidates"],
    "additionalProperties": False,
    "properties": {
        "candidates": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["token", "prob"],
                "additionalProperties": False,
                "properties": {
                    "token": {"type": "string", "minLength": 1},
                    "prob": {"type": "number", "minimum": 0.0, "maximum": 1.0},
                },
            },
        }
    },
}

SCORE = {
    "type": "object",
    "required": ["score"],
    "additionalProperties": False,
    "properties": {"score": {"type": "number", "minimum": 0.0, "maximum": 1.0}},
}

GRAMMAR = {
    "type": "object",
    "required": ["error_count"],
    "additionalProperties": False,
    "properties": {"error_count": {"type": "integer", "minimum": 0}},
}

HEALTH = {
    "type": "object",
    "required": ["ok"],
    "properties": {"ok": {"type": "boolean"}},
}

ERROR = {
    "type": "object",
    "required": ["error"],
    "properties": {"error": {"type": "string", "minLength": 1}},
}

GOLDEN_REQUESTS = [
    # happy-path classification
    ("POST", "/classify", {"task": "classification", "texts": ["i love this movie"]}, 200, PROBS),
    ("POST", "/classify", {"task": "classification", "texts": ["awful boring film", "a wonderful story"]}, 200, PROBS),
    ("POST", "/classify", {"task": "classification", "texts": ["the plot was slow ."]}, 200, PROBS),
    ("POST", "/classify", {"task": "classification", "texts": ["great acting , bad plot !"]}, 200, PROBS),
    ("POST", "/classify", {"task": "classification", "texts": [" ".join(["very"] * 300)]}, 200, PROBS),
    # happy-path entailment
    ("POST", "/classify", {"task": "entailment", "pairs": [{"premise": "i love this movie", "hypothesis": "i enjoy it"}]}, 200, PROBS),
    ("POST", "/classify", {"task": "entailment", "pairs": [{"premise": "the film was dull", "hypothesis": "the film was fun"}, {"premise": "a", "hypothesis": "an"}]}, 200, PROBS),
    # happy-path fill_mask
    ("POST", "/fill_mask", {"original": "i love this movie", "masked": "i [MASK] this movie", "top_k": 50}, 200, CANDIDATES),
    ("POST", "/fill_mask", {"original": "i love this movie", "masked": "i [MASK] this movie", "top_k": 1}, 200, CANDIDATES),
    ("POST", "/fill_mask", {"original": "the acting was great", "masked": "the acting was [MASK]", "top_k": 5}, 200, CANDIDATES),
    ("POST", "/fill_mask", {"original": "a boring plot", "masked": "a [MASK] plot", "top_k": 10}, 200, CANDIDATES),
    ("POST", "/fill_mask", {"original": "fun , lovely film !", "masked": "fun , [MASK] film !", "top_k": 3}, 200, CANDIDATES),
    ("POST", "/fill_mask", {"original": "love " + " ".join(["fine"] * 200), "masked": "[MASK] " + " ".join(["fine"] * 200), "top_k": 4}, 200, CANDIDATES),
    # happy-path similarity
    ("POST", "/similarity", {"a": "i love this movie", "b": "i love this movie"}, 200, SCORE),
    ("POST", "/similarity", {"a": "i love this movie", "b": "i hate this movie"}, 200, SCORE),
    ("POST", "/similarity", {"a": "great fun !", "b": "dull and slow ."}, 200, SCORE),
    # happy-path grammar
    ("POST", "/grammar", {"text": "she has a lovely story"}, 200, GRAMMAR),
    ("POST", "/grammar", {"text": "he have a apples"}, 200, GRAMMAR),
    ("POST", "/grammar", {"text": ""}, 200, GRAMMAR),
    ("POST", "/grammar", {"text": "the the movie movie"}, 200, GRAMMAR),
    # health
    ("GET", "/healthz", None, 200, HEALTH),
    # error shapes
    ("POST", "/classify", {"task": "classification"}, 400, ERROR),
    ("POST", "/classify", {"task": "entailment", "texts": ["wrong shape"]}, 400, ERROR),
    ("POST", "/fill_mask", {"original": "i love it", "masked": "i love it", "top_k": 5}, 422, ERROR),
    ("POST", "/fill_mask", {"original": "i love it", "masked": "i [MASK] it", "top_k": 0}, 400, ERROR),
]


def test_exactly_25_golden_requests():
    assert len(GOLDEN_REQUESTS) == 25


@pytest.mark.parametrize("method,path,payload,status,schema", GOLDEN_REQUESTS)
def test_golden_request_conforms(client, method, path, payload, status, schema):
    if method == "GET":
        resp = client.get(path)
    else:
        resp = client.post(path, json=payload)
    assert resp.status_code == status, resp.text
    jsonschema.validate(resp.json(), schema)


def test_malformed_json_is_400_with_error_shape(client):
    resp = client.post(
        "/classify", content=b"{not json", headers={"Content-Type": "application/json"}
    )
    assert resp.status_code == 400
    jsonschema.validate(resp.json(), ERROR)
