use std::time::{Duration, Instant};

use latlab::verify::{self, Status, CAMPAIGNS};

#[test]
fn full_run_is_deterministic_and_fast() {
    let start = Instant::now();
    let one = verify::run_campaigns(&[], Some(1)).unwrap();
    let many = verify::run_campaigns(&[], Some(4)).unwrap();
    assert!(start.elapsed() < Duration::from_secs(60));
    assert_eq!(verify::render(&one), verify::render(&many));
    assert_eq!(one.len(), CAMPAIGNS.len());
    for report in &one {
        let bad: Vec<String> = report.unexpected().map(|l| l.to_string()).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
}

#[test]
fn every_failure_is_an_expected_one() {
    for report in verify::run_campaigns(&[], None).unwrap() {
        for line in &report.lines {
            if line.status == Status::Fail {
                let reason = line.reason.as_deref().unwrap_or("");
                assert!(reason.starts_with("expected-failure"), "{line}");
            }
        }
    }
}

#[test]
fn rendering_has_a_header_per_campaign_and_a_summary() {
    let reports = verify::run_campaigns(&["gf2", "cyclic"], Some(2)).unwrap();
    let text = verify::render(&reports);
    let headers: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("# campaign"))
        .collect();
    assert_eq!(headers.len(), 2);
    assert!(headers[0].starts_with("# campaign gf2 structures: powerset:1"));
    assert!(text.lines().last().unwrap().starts_with("SUMMARY pass="));
    assert!(text.contains("CHECK cyclic/cycle:4/transitivity-printed: FAIL witness="));
    assert!(text.contains("CHECK cyclic/cycle:3/transitivity-printed: PASS reason=vacuous"));
}

#[test]
fn unknown_campaign_is_rejected_before_running() {
    assert!(verify::run_campaigns(&["gf2", "nope"], Some(1)).is_err());
    assert!(verify::run_campaign("nope").is_err());
}
