//! Serializing a loaded workspace and loading it again changes nothing.

use fole::gen::{self, Bounds, ShapeKind};
use fole::univ::limit_tbl;
use fole_cli::commands::cmd_join;
use fole_cli::workspace::{database_document, Db};
use fole_cli::{parse_str, serialize, Workspace};
use proptest::prelude::*;

fn kind(k: bool) -> ShapeKind {
    if k {
        ShapeKind::Cospan
    } else {
        ShapeKind::ThreeArrow
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn serialize_then_parse_is_the_identity(seed in any::<u64>(), k in any::<bool>()) {
        let mut rng = gen::rng(seed);
        let b = Bounds::default();
        let a = gen::type_domain(&mut rng, b);
        let db = gen::database(&mut rng, &a, &gen::shape(kind(k)), b);
        let ws = Workspace::load(database_document("D", &db)).unwrap();
        prop_assert_eq!(&ws.databases["D"], &Db::Fixed(db.clone()));
        let text = serialize(&ws);
        let again = parse_str(&text).unwrap();
        prop_assert!(again == ws);
        prop_assert_eq!(serialize(&again), text);
    }

    #[test]
    fn cli_join_is_the_library_join(seed in any::<u64>(), k in any::<bool>()) {
        let mut rng = gen::rng(seed);
        let b = Bounds::default();
        let a = gen::type_domain(&mut rng, b);
        let db = gen::database(&mut rng, &a, &gen::shape(kind(k)), b);
        let ws = Workspace::load(database_document("D", &db)).unwrap();
        let r = cmd_join(&ws, "D").unwrap();
        prop_assert!(r.passed());
        let lib = limit_tbl(&db).unwrap();
        prop_assert_eq!(r.table.as_ref(), Some(lib.vertex()));
    }
}

#[test]
fn canonical_form_ignores_declaration_order() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/join.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["tables"].as_array_mut().unwrap().reverse();
    doc["databases"][0]["arrows"].as_array_mut().unwrap().reverse();
    let a = parse_str(&text).unwrap();
    let b = parse_str(&doc.to_string()).unwrap();
    assert!(a == b);
    assert_eq!(serialize(&a), serialize(&b));
}
