use super::{heuristic_entry, heuristic_exit};
use super::{render_entry_prompt, render_exit_prompt, Decision, DecisionContext, DecisionPolicy};
use crate::error::Result;
use crate::llm_gateway::{parse_yes_no, DEFAULT_MODEL, CompletionBackend, CompletionRequest, ParsedVerdict, Verdict};

#[derive(Debug, Clone, PartialEq)]
pub struct LlmSettings {
    pub model_name: String,
    pub max_tokens: u32,
    pub temperature: f64,
}

impl Default for LlmSettings {
    fn default() -> Self {
        Self {
            model_name: DEFAULT_MODEL.to_owned(),
            max_tokens: 8,
            temperature: 0.0,
        }
    }
}

/// Asks a language model for every decision. Replies that contain no
/// standalone yes/no fall back to the heuristic verdict and are flagged.
pub struct LlmPolicy<B> {
    backend: B,
    settings: LlmSettings,
}

impl<B: CompletionBackend> LlmPolicy<B> {
    pub fn new(backend: B, settings: LlmSettings) -> Self {
        Self { backend, settings }
    }

    fn ask(&self, prompt: String, fallback: Verdict) -> Result<Decision> {
        let request = CompletionRequest {
            prompt,
            max_tokens: self.settings.max_tokens,
            temperature: self.settings.temperature,
            model_name: self.settings.model_name.clone(),
        };
        let response = self.backend.complete(&request)?;
        Ok(match parse_yes_no(&response.text) {
            ParsedVerdict::Answer(verdict) => Decision::direct(verdict),
            ParsedVerdict::ParseFailure => Decision {
                verdict: fallback,
                fell_back: true,
            },
        })
    }
}

impl<B: CompletionBackend> DecisionPolicy for LlmPolicy<B> {
    fn decide_entry(&self, ctx: &DecisionContext) -> Result<Decision> {
        self.ask(render_entry_prompt(ctx)?, heuristic_entry(ctx))
    }

    fn decide_exit(&self, ctx: &DecisionContext) -> Result<Decision> {
        self.ask(render_exit_prompt(ctx)?, heuristic_exit(ctx))
    }

    fn name(&self) -> &'static str {
        "llm"
    }
}
