mod common;

use std::sync::atomic::Ordering;
use std::time::{Duration, Instant};

use common::{dead_endpoint, stub_server};
use depin_sim::llm_gateway::{BackendKind, CompletionBackend, CompletionRequest, HttpBackend, HttpSettings};
use depin_sim::Error;

fn backend(url: &str, key: Option<&str>, retries: u32) -> HttpBackend {
    HttpBackend::new(HttpSettings {
        api_key: key.map(str::to_owned),
        timeout: Duration::from_secs(2),
        retries,
        backoff: Duration::from_millis(20),
        ..HttpSettings::new(url)
    })
    .unwrap()
}

#[test]
fn completion_text_passes_through_verbatim() {
    let stub = stub_server(200, r#"{"choices":[{"text":" No."}]}"#);
    let b = backend(&stub.url, None, 0);
    let reply = b.complete(&CompletionRequest::new("Should the node enter?")).unwrap();
    assert_eq!(reply.text, " No.");
    assert_eq!(reply.backend, BackendKind::Http);

    let seen = stub.seen.lock().unwrap();
    assert!(seen[0].request_line.starts_with("POST /v1/completions "));
    let body: serde_json::Value = serde_json::from_str(&seen[0].body).unwrap();
    assert_eq!(body["prompt"], "Should the node enter?");
    assert_eq!(body["max_tokens"], 8);
    assert_eq!(body["temperature"], 0.0);
    assert_eq!(body["model"], "EleutherAI/gpt-neo-125M");
    assert!(!seen[0].headers.iter().any(|(k, _)| k == "authorization"));
}

#[test]
fn api_key_is_sent_as_bearer_token() {
    let stub = stub_server(200, r#"{"choices":[{"text":"yes"}]}"#);
    backend(&format!("{}/", stub.url), Some("s3cret"), 0)
        .complete(&CompletionRequest::new("p"))
        .unwrap();
    let seen = stub.seen.lock().unwrap();
    assert!(seen[0]
        .headers
        .iter()
        .any(|(k, v)| k == "authorization" && v == "Bearer s3cret"));
}

#[test]
fn non_success_status_is_a_protocol_error_without_retry() {
    let stub = stub_server(503, r#"{"error":"overloaded"}"#);
    let err = backend(&stub.url, None, 3)
        .complete(&CompletionRequest::new("p"))
        .unwrap_err();
    match err {
        Error::Protocol { status, body } => {
            assert_eq!(status, 503);
            assert!(body.contains("overloaded"));
        }
        other => panic!("expected protocol error, got {other:?}"),
    }
    assert_eq!(stub.hits.load(Ordering::SeqCst), 1);
}

#[test]
fn malformed_body_is_a_protocol_error() {
    let stub = stub_server(200, r#"{"unexpected": true}"#);
    let err = backend(&stub.url, None, 0)
        .complete(&CompletionRequest::new("p"))
        .unwrap_err();
    assert!(matches!(err, Error::Protocol { status: 200, .. }), "{err:?}");
}

#[test]
fn unreachable_endpoint_retries_then_gives_up_in_bounded_time() {
    let settings = HttpSettings {
        timeout: Duration::from_millis(500),
        retries: 2,
        backoff: Duration::from_millis(20),
        ..HttpSettings::new(dead_endpoint())
    };
    let bound = settings.worst_case();
    let started = Instant::now();
    let err = HttpBackend::new(settings)
        .unwrap()
        .complete(&CompletionRequest::new("p"))
        .unwrap_err();
    assert!(matches!(err, Error::BackendUnavailable { attempts: 3, .. }), "{err:?}");
    assert!(started.elapsed() <= bound + Duration::from_millis(500));
}

#[test]
fn endpoint_must_be_http() {
    let err = HttpBackend::new(HttpSettings::new("localhost:8000")).unwrap_err();
    assert!(err.is_usage());
}
