#![allow(dead_code)]

use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;

use depin_sim::engine::SimulationConfig;
use depin_sim::llm_gateway::ScriptedBackend;
use regex::Regex;

/// Answers each prompt the way the heuristic would, reading R, C and the
/// tolerance back out of the prompt text.
pub fn heuristic_mirror() -> ScriptedBackend {
    let entry = Regex::new(r"revenue is (\S+)\. A node has a cost of (\S+)\. Should the node enter").unwrap();
    let exit = Regex::new(r"revenue is (\S+)\. A node has a cost of (\S+) and a tolerance of (\S+)\. Should the node exit")
        .unwrap();
    ScriptedBackend::with_responder(move |prompt| {
        let num = |s: &str| s.parse::<f64>().unwrap();
        let yes = if let Some(c) = entry.captures(prompt) {
            num(&c[1]) > num(&c[2])
        } else if let Some(c) = exit.captures(prompt) {
            num(&c[1]) < num(&c[3]) * num(&c[2])
        } else {
            panic!("unexpected prompt: {prompt}");
        };
        if yes { "Yes." } else { "No." }.to_owned()
    })
}

/// Low user revenue and higher costs, so revenue per node falls below
/// tolerance once the network grows and nodes actually leave.
pub fn churn_config(horizon: u32, seed: u64) -> SimulationConfig {
    let mut c = SimulationConfig {
        horizon_months: horizon,
        seed,
        ..SimulationConfig::default()
    };
    c.revenue.user_revenue_factor = 0.01;
    c.revenue.node_operating_cost = 2_000.0;
    c
}

/// What a stub server saw in one request.
#[derive(Debug, Clone, Default)]
pub struct Seen {
    pub request_line: String,
    pub headers: Vec<(String, String)>,
    pub body: String,
}

pub struct Stub {
    pub url: String,
    pub seen: Arc<Mutex<Vec<Seen>>>,
    pub hits: Arc<AtomicUsize>,
}

/// One-thread HTTP server answering every request with `status` and `body`.
pub fn stub_server(status: u16, body: &'static str) -> Stub {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}", listener.local_addr().unwrap());
    let seen = Arc::new(Mutex::new(Vec::new()));
    let hits = Arc::new(AtomicUsize::new(0));
    let (seen2, hits2) = (seen.clone(), hits.clone());
    thread::spawn(move || {
        for stream in listener.incoming() {
            let Ok(mut stream) = stream else { continue };
            hits2.fetch_add(1, Ordering::SeqCst);
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut req = Seen::default();
            reader.read_line(&mut req.request_line).unwrap();
            let mut length = 0;
            loop {
                let mut line = String::new();
                if reader.read_line(&mut line).unwrap() == 0 || line.trim().is_empty() {
                    break;
                }
                if let Some((k, v)) = line.trim_end().split_once(':') {
                    let (k, v) = (k.trim().to_ascii_lowercase(), v.trim().to_owned());
                    if k == "content-length" {
                        length = v.parse().unwrap();
                    }
                    req.headers.push((k, v));
                }
            }
            let mut buf = vec![0; length];
            reader.read_exact(&mut buf).unwrap();
            req.body = String::from_utf8(buf).unwrap();
            seen2.lock().unwrap().push(req);
            let reply = format!(
                "HTTP/1.1 {status} X\r\ncontent-type: application/json\r\ncontent-length: {}\r\nconnection: close\r\n\r\n{body}",
                body.len()
            );
            let _ = stream.write_all(reply.as_bytes());
        }
    });
    Stub { url, seen, hits }
}

/// A localhost address nothing listens on.
pub fn dead_endpoint() -> String {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    drop(listener);
    format!("http://{addr}")
}
