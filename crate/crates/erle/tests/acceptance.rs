//! Acceptance suite. Prints one PASS/FAIL line per criterion; run with
//! `cargo test -p erle --test acceptance -- --nocapture` to see them.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use erle::fixtures;
use erle_core::bmp::{parse_bmp, row_stride, write_bmp};
use erle_core::container::{self, CompressedImage, Mode};
use erle_core::metrics::{compression_ratio, max_channel_error};
use erle_core::run_codec::{decode, encode_classic, encode_enhanced, encode_runs_scalar};
use erle_core::{ImageBuffer, LogicalRun, Rgb24, Threshold};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<(), String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

const PAPER_SEQ: [i64; 16] = [
    100, 101, 102, 100, 200, 200, 205, 209, 300, 300, 305, 301, 210, 205, 300, 300,
];
const THRESHOLDS: [u8; 6] = [0, 1, 5, 10, 25, 50];
const CORPUS_SIZE: usize = 1000;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if $cond {
        } else {
            return Err(format!($($msg)+));
        }
    };
}

fn pairs(runs: &[erle_core::ScalarRun]) -> Vec<(i64, u64)> {
    runs.iter().map(|r| (r.value(), r.count())).collect()
}

/// 1,000 images, 1..=33 on each side: half uniform noise, half built from
/// random-length runs of random colors with small jitter.
fn random_corpus() -> Vec<ImageBuffer> {
    let mut rng = StdRng::seed_from_u64(0x00AC_CE97);
    (0..CORPUS_SIZE)
        .map(|i| {
            let w = rng.random_range(1..=33u32);
            let h = rng.random_range(1..=33u32);
            let n = (w * h) as usize;
            let mut px = Vec::with_capacity(n);
            if i % 2 == 0 {
                px.extend((0..n).map(|_| Rgb24::from(rng.random::<[u8; 3]>())));
            } else {
                let jitter = rng.random_range(0..=8i16);
                while px.len() < n {
                    let base: [u8; 3] = rng.random();
                    let len = rng.random_range(1..=40usize);
                    for _ in 0..len.min(n - px.len()) {
                        let mut c = |v: u8| {
                            (i16::from(v) + rng.random_range(-jitter..=jitter)).clamp(0, 255) as u8
                        };
                        px.push(Rgb24::new(c(base[0]), c(base[1]), c(base[2])));
                    }
                }
            }
            ImageBuffer::new(w, h, px).unwrap()
        })
        .collect()
}

fn run_starts(counts: impl Iterator<Item = u64>) -> Vec<u64> {
    counts
        .scan(0u64, |acc, c| {
            let s = *acc;
            *acc += c;
            Some(s)
        })
        .collect()
}

/// Brute-force run starts: from each start, jump to the first later element
/// farther than `th` from it.
fn oracle_starts(seq: &[i64], th: i64) -> Vec<u64> {
    let mut starts = Vec::new();
    let mut s = 0;
    while s < seq.len() {
        starts.push(s as u64);
        s = (s + 1..seq.len())
            .find(|&j| (seq[j] - seq[s]).abs() > th)
            .unwrap_or(seq.len());
    }
    starts
}

fn c1_enhanced_worked_example() -> Outcome {
    let t = Instant::now();
    let runs = encode_runs_scalar(&PAPER_SEQ, 10).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let want = vec![(100, 4), (200, 4), (300, 4), (210, 2), (300, 2)];
    ensure!(pairs(&runs) == want, "got {:?}", pairs(&runs));
    ensure!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    Ok(())
}

fn c2_classic_worked_example() -> Outcome {
    let runs = encode_runs_scalar(&PAPER_SEQ, 0).map_err(|e| e.to_string())?;
    let want = vec![
        (100, 1),
        (101, 1),
        (102, 1),
        (100, 1),
        (200, 2),
        (205, 1),
        (209, 1),
        (300, 2),
        (305, 1),
        (301, 1),
        (210, 1),
        (205, 1),
        (300, 2),
    ];
    ensure!(pairs(&runs) == want, "got {:?}", pairs(&runs));
    Ok(())
}

fn c3_string_example() -> Outcome {
    let digits: Vec<i64> = "11112222333111"
        .bytes()
        .map(|b| i64::from(b - b'0'))
        .collect();
    let runs = encode_runs_scalar(&digits, 0).map_err(|e| e.to_string())?;
    ensure!(
        pairs(&runs) == vec![(1, 4), (2, 4), (3, 3), (1, 3)],
        "got {:?}",
        pairs(&runs)
    );
    Ok(())
}

fn c4_lossless_roundtrip(corpus: &[ImageBuffer]) -> Outcome {
    let t = Instant::now();
    for (i, img) in corpus.iter().enumerate() {
        let back = decode(&encode_classic(img), img.width(), img.height())
            .map_err(|e| format!("image {i}: {e}"))?;
        ensure!(&back == img, "image {i} differs after roundtrip");
    }
    let elapsed = t.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(())
}

fn c5_error_bound(corpus: &[ImageBuffer]) -> Outcome {
    let mut violations = 0;
    for img in corpus {
        for th in THRESHOLDS {
            let recon = decode(&encode_enhanced(img, th.into()), img.width(), img.height())
                .map_err(|e| e.to_string())?;
            if max_channel_error(img, &recon).map_err(|e| e.to_string())? > th {
                violations += 1;
            }
        }
    }
    ensure!(violations == 0, "{violations} violations");
    Ok(())
}

fn c6_zero_equivalence_and_dominance(corpus: &[ImageBuffer]) -> Outcome {
    for (i, img) in corpus.iter().enumerate() {
        let classic = encode_classic(img);
        ensure!(
            encode_enhanced(img, Threshold::ZERO) == classic,
            "image {i}: th=0 differs from classic"
        );
        for th in THRESHOLDS {
            let n = encode_enhanced(img, th.into()).len();
            ensure!(
                n <= classic.len(),
                "image {i} th={th}: {n} > {}",
                classic.len()
            );
        }
    }
    Ok(())
}

fn c7_refinement() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    for k in 0..1000 {
        let len = rng.random_range(1..=64usize);
        let seq: Vec<i64> = (0..len).map(|_| rng.random_range(0..=20)).collect();
        let th = rng.random_range(0..=10i64);
        let enhanced = encode_runs_scalar(&seq, th).map_err(|e| e.to_string())?;
        let starts = run_starts(enhanced.iter().map(|r| r.count()));
        ensure!(
            starts == oracle_starts(&seq, th),
            "sequence {k}: differs from oracle"
        );
        let classic = oracle_starts(&seq, 0);
        ensure!(
            starts.iter().all(|s| classic.contains(s)),
            "sequence {k}: enhanced start not a classic start"
        );
    }
    Ok(())
}

fn c8_bmp_roundtrip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    for w in 1..=9u32 {
        for _ in 0..20 {
            let h = rng.random_range(1..=9u32);
            let img =
                ImageBuffer::from_fn(w, h, |_, _| Rgb24::from(rng.random::<[u8; 3]>())).unwrap();
            let bytes = write_bmp(&img).map_err(|e| e.to_string())?;
            ensure!(&bytes[0..2] == b"BM", "signature");
            let u32_at = |at: usize| u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap());
            let u16_at = |at: usize| u16::from_le_bytes(bytes[at..at + 2].try_into().unwrap());
            ensure!(u32_at(14) == 40, "header size {}", u32_at(14));
            ensure!(u16_at(26) == 1, "planes");
            ensure!(u16_at(28) == 24, "bpp");
            ensure!(u32_at(30) == 0, "compression");
            ensure!(
                bytes.len() as u64 == 54 + row_stride(w) * u64::from(h),
                "length for width {w}"
            );
            let back = parse_bmp(&bytes).map_err(|e| e.to_string())?;
            ensure!(back == img, "width {w}: roundtrip differs");
        }
    }
    Ok(())
}

fn c9_container(corpus: &[ImageBuffer]) -> Outcome {
    for (i, img) in corpus.iter().enumerate().step_by(3) {
        for (mode, th) in [(Mode::Classic, 0u8), (Mode::Enhanced, (i % 60) as u8)] {
            let c = CompressedImage::compress(img, mode, th.into());
            let bytes = c.to_bytes();
            ensure!(
                bytes.len() == 20 + 4 * c.records().len(),
                "image {i}: length {}",
                bytes.len()
            );
            let back = container::deserialize(&bytes).map_err(|e| e.to_string())?;
            ensure!(back == c, "image {i}: container roundtrip differs");
        }
    }
    let run = LogicalRun::new(Rgb24::gray(9), 300).unwrap();
    let c = CompressedImage::from_runs(Mode::Classic, Threshold::ZERO, 300, 1, &[run])
        .map_err(|e| e.to_string())?;
    let counts: Vec<u8> = c.records().iter().map(|r| r.count).collect();
    ensure!(counts == [255, 45], "split {counts:?}");
    Ok(())
}

fn c10_ratio_formula() -> Outcome {
    let a = compression_ratio(170, 64).map_err(|e| e.to_string())?;
    let b = compression_ratio(170, 31).map_err(|e| e.to_string())?;
    ensure!((a - 2.65).abs() <= 0.02, "170/64 = {a}");
    ensure!((b - 5.48).abs() <= 0.02, "170/31 = {b}");
    Ok(())
}

fn c11_threshold_trend() -> Outcome {
    let ratio = |img: &ImageBuffer, mode, th: u8| {
        let original = write_bmp(img).unwrap().len() as u64;
        let packed = CompressedImage::compress(img, mode, th.into()).byte_len();
        compression_ratio(original, packed).unwrap()
    };
    let grad = fixtures::horizontal_gradient(256, 256);
    let classic = ratio(&grad, Mode::Classic, 0);
    let th1 = ratio(&grad, Mode::Enhanced, 1);
    let th10 = ratio(&grad, Mode::Enhanced, 10);
    ensure!(
        th10 > th1 && th1 > classic,
        "gradient ratios th10={th10:.3} th1={th1:.3} classic={classic:.3}"
    );

    let noise = fixtures::noise(256, 256, 11);
    let classic = ratio(&noise, Mode::Classic, 0);
    ensure!(classic < 1.0, "noise classic ratio {classic:.3}");
    let payload = CompressedImage::compress(&noise, Mode::Classic, Threshold::ZERO).byte_len();
    let raw = 3 * noise.pixel_count();
    ensure!(
        payload as f64 <= 4.0 / 3.0 * raw as f64 + 20.0,
        "noise payload {payload} exceeds bound for raw {raw}"
    );
    Ok(())
}

fn erle(args: &[&str]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_erle"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())
}

fn c12_cli_end_to_end(dir: &Path) -> Outcome {
    let corpus = dir.join("corpus");
    let work = dir.join("work");
    fs::create_dir_all(&work).map_err(|e| e.to_string())?;
    let o = erle(&[
        "fixtures",
        corpus.to_str().unwrap(),
        "--width",
        "96",
        "--height",
        "64",
    ])?;
    ensure!(o.status.success(), "fixtures failed: {o:?}");

    let th = 10u8;
    for entry in erle::report::list_bmps(&corpus).map_err(|e| e.to_string())? {
        let name = entry.file_name().unwrap().to_string_lossy().into_owned();
        let original = parse_bmp(&fs::read(&entry).unwrap()).map_err(|e| e.to_string())?;
        for mode in ["classic", "enhanced"] {
            let packed = work.join(format!("{name}.{mode}.erle"));
            let back = work.join(format!("{name}.{mode}.bmp"));
            let o = erle(&[
                "compress",
                entry.to_str().unwrap(),
                "--out",
                packed.to_str().unwrap(),
                "--mode",
                mode,
                "--threshold",
                &th.to_string(),
            ])?;
            ensure!(o.status.success(), "{name} {mode} compress: {o:?}");
            let o = erle(&[
                "decompress",
                packed.to_str().unwrap(),
                "--out",
                back.to_str().unwrap(),
            ])?;
            ensure!(o.status.success(), "{name} {mode} decompress: {o:?}");
            let recon = parse_bmp(&fs::read(&back).unwrap()).map_err(|e| e.to_string())?;
            ensure!(
                (recon.width(), recon.height()) == (original.width(), original.height()),
                "{name} {mode}: dimensions changed"
            );
            let err = max_channel_error(&original, &recon).map_err(|e| e.to_string())?;
            match mode {
                "classic" => ensure!(recon == original, "{name}: classic not lossless"),
                _ => ensure!(err <= th, "{name}: error {err} > {th}"),
            }
        }
    }

    let csv = dir.join("report.csv");
    let o = erle(&[
        "report",
        corpus.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ])?;
    ensure!(o.status.success(), "report failed: {o:?}");
    let text = fs::read_to_string(&csv).map_err(|e| e.to_string())?;
    let lines: Vec<&str> = text.lines().collect();
    ensure!(lines.len() == 11, "{} CSV lines", lines.len());
    for line in &lines[1..] {
        let cols: Vec<&str> = line.split(',').collect();
        let classic: f64 = cols[3]
            .parse()
            .map_err(|_| format!("bad ratio in {line}"))?;
        let enhanced: f64 = cols[5]
            .parse()
            .map_err(|_| format!("bad ratio in {line}"))?;
        ensure!(enhanced >= classic, "row {line}");
    }
    Ok(())
}

#[test]
fn acceptance() {
    let corpus = random_corpus();
    let tmp = tempfile::TempDir::new().unwrap();
    let criteria: Vec<(&str, Check)> = vec![
        (
            "1 enhanced worked example: 5 runs",
            Box::new(c1_enhanced_worked_example),
        ),
        (
            "2 classic worked example: 13 runs",
            Box::new(c2_classic_worked_example),
        ),
        ("3 digit string example", Box::new(c3_string_example)),
        (
            "4 lossless roundtrip, 1000 images",
            Box::new(|| c4_lossless_roundtrip(&corpus)),
        ),
        ("5 error bound <= th", Box::new(|| c5_error_bound(&corpus))),
        (
            "6 th=0 equivalence and run-count dominance",
            Box::new(|| c6_zero_equivalence_and_dominance(&corpus)),
        ),
        (
            "7 refinement vs brute-force oracle",
            Box::new(c7_refinement),
        ),
        (
            "8 BMP roundtrip and header fields",
            Box::new(c8_bmp_roundtrip),
        ),
        (
            "9 container roundtrip, size, split",
            Box::new(|| c9_container(&corpus)),
        ),
        ("10 ratio formula", Box::new(c10_ratio_formula)),
        (
            "11 threshold trend and expansion bound",
            Box::new(c11_threshold_trend),
        ),
        (
            "12 CLI end to end",
            Box::new(|| c12_cli_end_to_end(tmp.path())),
        ),
    ];

    let mut failed = Vec::new();
    for (name, check) in &criteria {
        match check() {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
