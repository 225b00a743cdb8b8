"""Optional client for minting candidate outputs from a hosted model.

Posts chat-completion-style JSON to a configured endpoint using fixed
prompt templates with a ``{claims}`` slot. Temperature is pinned to 0
so repeated runs stay comparable. Nothing in the evaluation path
depends on this module.
"""
from __future__ import annotations

from dataclasses import dataclass

ABSTRACT_PROMPT = (
    "Please draft a patent abstract from the provided claims. The abstract "
    "should concisely summarize the technical disclosure, enabling any reader "
    "to quickly understand the subject matter.\n"
    "Claims: {claims}\n"
    "Abstract:"
)

NEXT_DEPENDENT_PROMPT = (
    "Please assist me in drafting the next DEPENDENT claim based on the "
    "provided patent claims below. This claim should be written in a "
    "dependent format, precisely specifying its dependency on one or more "
    "preceding claims. It should be legally sound, in line with patent claim "
    "drafting conventions, and use the existing claims as a basis for your "
    "draft. Ensure that the claim you draft is clearly and explicitly "
    "dependent on a previous claim.\n"
    "Claims: {claims}"
)

NEXT_INDEPENDENT_PROMPT = (
    "Please assist me in drafting the next INDEPENDENT claim in the series, "
    "directly following the provided patent claims below. This independent "
    "claim should be precise, legally sound, and in line with patent claim "
    "drafting conventions. Please continue the numbering scheme from the "
    "previous claims and ensure that this claim builds upon the previous "
    "claims logically.\n"
    "Claims: {claims}"
)

PROMPTS = {
    "abstract": ABSTRACT_PROMPT,
    "dependent": NEXT_DEPENDENT_PROMPT,
    "independent": NEXT_INDEPENDENT_PROMPT,
}


class GenerationError(RuntimeError):
    """Raised when the generation endpoint cannot produce a completion."""


def render_prompt(kind: str, claims: str) -> str:
    """Fill the template for ``kind`` (abstract, dependent, independent)."""
    try:
        template = PROMPTS[kind]
    except KeyError:
        raise ValueError(
            f"unknown generation kind {kind!r}; expected one of {sorted(PROMPTS)}"
        ) from None
    return template.replace("{claims}", claims)


@dataclass
class GenerationClient:
    """Minimal chat-completion client for a configured endpoint.

    Request body: ``{"messages": [{"role": "user", "content": ...}],
    "temperature": 0}`` plus an optional ``"model"``. The reply must
    carry ``choices[0].message.content``.
    """

    url: str
    model: str | None = None
    timeout: float = 60.0

    def generate(self, kind: str, claims: str) -> str:
        import requests

        body: dict = {
            "messages": [{"role": "user", "content": render_prompt(kind, claims)}],
            "temperature": 0,
        }
        if self.model:
            body["model"] = self.model
        try:
            resp = requests.post(self.url, json=body, timeout=self.timeout)
            resp.raise_for_status()
            payload = resp.json()
            return payload["choices"][0]["message"]["content"]
        except GenerationError:
            raise
        except Exception as exc:  # noqa: BLE001 - network/shape errors
            raise GenerationError(f"generation request failed: {exc}") from exc
