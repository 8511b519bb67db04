use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_streamasm"))
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("streamasm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

fn without_time(stdout: &str) -> String {
    let (body, summary) = stdout
        .trim_end()
        .rsplit_once('\n')
        .unwrap_or(("", stdout.trim_end()));
    let summary = summary.rsplit_once(" in ").unwrap().0;
    format!("{body}\n{summary}")
}

#[test]
fn missing_arguments_print_usage_only() {
    let out = bin().arg("reads.txt").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(text(&out.stderr).contains("Usage: streamasm <file> <nGenes> <timeLimit> [ -c ]"));
}

#[test]
fn unknown_flag_is_rejected() {
    let out = bin()
        .args(["reads.txt", "1", "10", "--fast"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("unknown option --fast"));
}

#[test]
fn unreadable_file_is_an_error() {
    let out = bin()
        .args(["/no/such/reads.txt", "1", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(text(&out.stderr).contains("/no/such/reads.txt"));
}

#[test]
fn fasta_and_plain_give_the_same_genes() {
    let plain = temp_file("plain.txt", "ATGCCTAAGG\nCTAAGGATGCGTGAC\n");
    let fasta = temp_file("reads.fa", ">r1\nATGCC\nTAAGG\n>r2\nCTAAGGATGC\nGTGAC\n");
    let a = bin()
        .args([plain.to_str().unwrap(), "10", "5000", "--k", "6"])
        .output()
        .unwrap();
    let b = bin()
        .args([fasta.to_str().unwrap(), "10", "5000", "--k", "6"])
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(
        without_time(&text(&a.stdout)),
        "atgcctaa\natgcgtga\nFound 2 fragments"
    );
    assert_eq!(
        without_time(&text(&a.stdout)),
        without_time(&text(&b.stdout))
    );
}

#[test]
fn reads_from_standard_input() {
    let out = with_stdin(&["-", "10", "5000", "--k", "8"], "atgcctaaggatgcgtgac\n");
    assert!(out.status.success());
    assert_eq!(
        without_time(&text(&out.stdout)),
        "atgcctaa\natgcgtga\nFound 2 fragments"
    );
}

#[test]
fn custom_codons_are_prompted() {
    let reads = temp_file("codons.txt", "ATGCCTAAGGATGCGTGAC\n");
    let out = with_stdin(
        &[reads.to_str().unwrap(), "10", "5000", "--k", "8", "-c"],
        "gga\ntga\n",
    );
    assert!(out.status.success());
    let err = text(&out.stderr);
    assert!(err.contains("Enter the initial codons separated by spaces:"));
    assert!(err.contains("Enter the final codons separated by spaces:"));
    assert_eq!(
        without_time(&text(&out.stdout)),
        "ggatgcgtga\nFound 1 fragments"
    );
}

#[test]
fn frame_flag_changes_matching() {
    let reads = temp_file("frame.txt", "ATGCTAACCTGAGG\n");
    let any = bin()
        .args([reads.to_str().unwrap(), "10", "5000", "--k", "5"])
        .output()
        .unwrap();
    let framed = bin()
        .args([reads.to_str().unwrap(), "10", "5000", "--k", "5", "--frame"])
        .output()
        .unwrap();
    assert_eq!(
        without_time(&text(&any.stdout)),
        "atgctaa\nFound 1 fragments"
    );
    assert_eq!(
        without_time(&text(&framed.stdout)),
        "atgctaacctga\nFound 1 fragments"
    );
}

#[test]
fn verbose_line_goes_to_stderr() {
    let reads = temp_file("verbose.txt", "ATGCCTAAGGATGCGTGAC\n");
    let out = bin()
        .args([
            reads.to_str().unwrap(),
            "10",
            "5000",
            "--k",
            "8",
            "--verbose",
        ])
        .output()
        .unwrap();
    assert!(text(&out.stderr).starts_with("reads=1 nodes=13 genes=2"));
    assert_eq!(text(&out.stdout).lines().count(), 3);
}

#[test]
fn gen_is_deterministic() {
    let a = bin().args(["gen", "2000", "5"]).output().unwrap();
    let b = bin().args(["gen", "2000", "5"]).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<_> = text(&a.stdout).lines().map(str::len).collect();
    // offsets 0..1500 step 150 plus a tail read at 1600
    assert_eq!(lines, vec![400; 12]);
}

#[test]
fn bench_prints_csv_rows() {
    let out = bin().args(["bench", "16500", "3"]).output().unwrap();
    assert!(out.status.success());
    let stdout = text(&out.stdout);
    let lines: Vec<_> = stdout.lines().collect();
    assert_eq!(
        lines[0],
        "n_genes,elapsed_ms,node_count,reads_processed,genes_found"
    );
    let budgets: Vec<_> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(budgets, ["15", "30", "45", "60"]);
    for l in &lines[1..] {
        let cols: Vec<_> = l.split(',').collect();
        let nodes: usize = cols[2].parse().unwrap();
        assert!(nodes <= 16_500 - 200 + 1);
    }
}
