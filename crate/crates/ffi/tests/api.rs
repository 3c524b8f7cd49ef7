use primeage_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

fn read_string(f: impl Fn(*mut c_char, usize, *mut usize) -> PrimeageStatus) -> String {
    let mut needed = 0usize;
    assert_eq!(
        f(ptr::null_mut(), 0, &mut needed),
        PrimeageStatus::BufferTooSmall
    );
    let mut buf = vec![0 as c_char; needed];
    assert_eq!(
        f(buf.as_mut_ptr(), buf.len(), &mut needed),
        PrimeageStatus::Ok
    );
    unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn last_error() -> String {
    read_string(|b, c, n| unsafe { primeage_last_error(b, c, n) })
}

#[test]
fn graph_round_trip() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(primeage_graph_new(4, &mut g), PrimeageStatus::Ok);
        for (u, v) in [(0, 1), (1, 2), (2, 3)] {
            assert_eq!(primeage_graph_add_edge(g, u, v), PrimeageStatus::Ok);
        }
        let g6 = read_string(|b, c, n| primeage_graph_to_graph6(g, b, c, n));
        assert_eq!(g6, "Ch");

        let mut prime = false;
        assert_eq!(primeage_graph_is_prime(g, &mut prime), PrimeageStatus::Ok);
        assert!(prime);

        // P4 is self-complementary.
        let mut c = ptr::null_mut();
        assert_eq!(primeage_graph_complement(g, &mut c), PrimeageStatus::Ok);
        let k1 = read_string(|b, cap, n| primeage_graph_canonical_key(g, b, cap, n));
        let k2 = read_string(|b, cap, n| primeage_graph_canonical_key(c, b, cap, n));
        assert_eq!(k1, k2);

        let mut edge = true;
        assert_eq!(
            primeage_graph_has_edge(c, 0, 1, &mut edge),
            PrimeageStatus::Ok
        );
        assert!(!edge);
        assert_eq!(
            primeage_graph_has_edge(c, 0, 9, &mut edge),
            PrimeageStatus::InvalidArgument
        );

        let mut embeds = false;
        assert_eq!(primeage_graph_embeds(c, g, &mut embeds), PrimeageStatus::Ok);
        assert!(embeds);
        primeage_graph_free(c);
        primeage_graph_free(g);
    }
}

#[test]
fn graph6_errors_are_reported() {
    unsafe {
        let bad = CString::new("C~~").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(
            primeage_graph_from_graph6(bad.as_ptr(), &mut g),
            PrimeageStatus::InvalidArgument
        );
        assert!(g.is_null());
        assert!(last_error().contains("graph6"));
        assert_eq!(
            primeage_graph_from_graph6(ptr::null(), &mut g),
            PrimeageStatus::NullPointer
        );
        let mut n = 0;
        assert_eq!(
            primeage_graph_order(ptr::null(), &mut n),
            PrimeageStatus::NullPointer
        );
        primeage_graph_free(ptr::null_mut());
    }
}

#[test]
fn too_large_for_primality() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(primeage_graph_new(70, &mut g), PrimeageStatus::Ok);
        let mut prime = false;
        assert_eq!(
            primeage_graph_is_prime(g, &mut prime),
            PrimeageStatus::TooLarge
        );
        primeage_graph_free(g);
    }
}

#[test]
fn words_and_word_graphs() {
    unsafe {
        let mut w = ptr::null_mut();
        assert_eq!(primeage_word_fibonacci(&mut w), PrimeageStatus::Ok);
        let p = read_string(|b, c, n| primeage_word_prefix(w, 13, b, c, n));
        assert_eq!(p, "0100101001001");

        let mut g = ptr::null_mut();
        assert_eq!(primeage_word_graph(w, 20, &mut g), PrimeageStatus::Ok);
        let mut order = 0;
        assert_eq!(primeage_graph_order(g, &mut order), PrimeageStatus::Ok);
        assert_eq!(order, 21);
        primeage_graph_free(g);
        primeage_word_free(w);

        let mut m = ptr::null_mut();
        assert_eq!(
            primeage_word_mechanical(1, 2, 0, 1, &mut m),
            PrimeageStatus::Ok
        );
        assert_eq!(
            read_string(|b, c, n| primeage_word_prefix(m, 6, b, c, n)),
            "010101"
        );
        primeage_word_free(m);
        assert_eq!(
            primeage_word_mechanical(1, 0, 0, 1, &mut m),
            PrimeageStatus::InvalidArgument
        );

        let (head, period) = (CString::new("0").unwrap(), CString::new("1").unwrap());
        let mut q = ptr::null_mut();
        assert_eq!(
            primeage_word_periodic(head.as_ptr(), period.as_ptr(), &mut q),
            PrimeageStatus::Ok
        );
        assert_eq!(
            read_string(|b, c, n| primeage_word_prefix(q, 4, b, c, n)),
            "0111"
        );
        primeage_word_free(q);

        let bits = CString::new("0110").unwrap();
        let mut e = ptr::null_mut();
        assert_eq!(
            primeage_word_from_bits(bits.as_ptr(), &mut e),
            PrimeageStatus::Ok
        );
        let mut needed = 0;
        let mut buf = [0 as c_char; 16];
        assert_eq!(
            primeage_word_prefix(e, 5, buf.as_mut_ptr(), buf.len(), &mut needed),
            PrimeageStatus::InvalidArgument
        );
        primeage_word_free(e);
        let junk = CString::new("01x").unwrap();
        assert_eq!(
            primeage_word_from_bits(junk.as_ptr(), &mut e),
            PrimeageStatus::InvalidArgument
        );
    }
}

#[test]
fn realizer_validation() {
    for word in ["", "1", "0", "1111", "0100101001"] {
        let bits = CString::new(word).unwrap();
        let mut ok = false;
        assert_eq!(
            unsafe { primeage_realizer_validates(bits.as_ptr(), &mut ok) },
            PrimeageStatus::Ok
        );
        assert!(ok, "{word}");
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/primeage.h");
    let source = include_str!("../src/lib.rs");
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    assert!(header.contains("typedef struct PrimeageGraph PrimeageGraph;"));
}

#[test]
fn header_compiles_as_c() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"primeage.h\"\n\
         int main(void) {\n\
           PrimeageGraph *g = 0;\n\
           size_t n = 0;\n\
           if (primeage_graph_new(3, &g) != PRIMEAGE_STATUS_OK) return 1;\n\
           primeage_graph_order(g, &n);\n\
           primeage_graph_free(g);\n\
           return n == 3 ? 0 : 1;\n\
         }\n",
    )
    .unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    match std::process::Command::new("cc")
        .args([
            "-std=c99",
            "-Wall",
            "-Werror",
            "-fsyntax-only",
            "-I",
            include,
        ])
        .arg(&src)
        .status()
    {
        Ok(status) => assert!(status.success()),
        Err(_) => eprintln!("no C compiler on PATH; header syntax not checked"),
    }
}
