use std::sync::Arc;

use crate::exactfield::Field;
use crate::module::{parse_presentation_file, TruncatedModule};

/// Builds a module from presentation text; the header supplies the category.
pub fn module_from_text<F: Field>(f: &F, text: &str, horizon: usize) -> Arc<TruncatedModule<F>> {
    let text = format!("catrep-presentation 1\n{text}");
    let file = parse_presentation_file(&text).unwrap();
    let cat = Arc::new(file.category().unwrap());
    file.presentation(&cat, f).unwrap().module(cat, f, horizon).0
}
