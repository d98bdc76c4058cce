from enum import Enum


class SingletonModeEnum(str, Enum):
    include = "include"
    exclude = "exclude"


class SplitModeEnum(str, Enum):
    plain = "plain"
    expanded = "expanded"


class DocumentFormatEnum(str, Enum):
    conll = "conll"
    canonical = "canonical"


class ReportFormatEnum(str, Enum):
    tsv = "tsv"
    records = "records"


class RenderStyleEnum(str, Enum):
    decimal = "decimal"   # two decimals, truncated
    percent = "percent"   # integers, round-half-up


class ProjectionKindEnum(str, Enum):
    aligned = "aligned"
    misaligned = "misaligned"
    non_aligned = "non_aligned"


class ViolationKindEnum(str, Enum):
    out_of_bounds = "out_of_bounds"
    empty_span = "empty_span"
    duplicate_entity_id = "duplicate_entity_id"
    empty_entity = "empty_entity"
    duplicate_span = "duplicate_span"
    shared_span = "shared_span"
    dangling_reference = "dangling_reference"
    too_few_antecedents = "too_few_antecedents"
    orphan_anaphor = "orphan_anaphor"


class MetricEnum(str, Enum):
    mentions = "mentions"
    muc = "muc"
    b_cubed = "b_cubed"
    ceaf_e = "ceaf_e"
    lea = "lea"


# Report column order of the result tables
METRIC_ORDER = [MetricEnum.mentions, MetricEnum.muc, MetricEnum.b_cubed, MetricEnum.ceaf_e, MetricEnum.lea]

METRIC_LABELS = {
    MetricEnum.mentions: "Mentions",
    MetricEnum.muc: "MUC",
    MetricEnum.b_cubed: "B3",
    MetricEnum.ceaf_e: "CEAFe",
    MetricEnum.lea: "LEA",
}


class DataSplitEnum(str, Enum):
    train = "train"
    dev = "dev"
    test = "test"


class LanguageCodeEnum(str, Enum):
    """FLORES-200 codes of the supported South Asian languages, plus the English source."""
    asm_Beng = "asm_Beng"
    awa_Deva = "awa_Deva"
    ben_Beng = "ben_Beng"
    bho_Deva = "bho_Deva"
    bod_Tibt = "bod_Tibt"
    dzo_Tibt = "dzo_Tibt"
    guj_Gujr = "guj_Gujr"
    hin_Deva = "hin_Deva"
    hne_Deva = "hne_Deva"
    kan_Knda = "kan_Knda"
    kas_Arab = "kas_Arab"
    mag_Deva = "mag_Deva"
    mai_Deva = "mai_Deva"
    mal_Mlym = "mal_Mlym"
    mar_Deva = "mar_Deva"
    mni_Beng = "mni_Beng"
    mya_Mymr = "mya_Mymr"
    npi_Deva = "npi_Deva"
    ory_Orya = "ory_Orya"
    pan_Guru = "pan_Guru"
    pbt_Arab = "pbt_Arab"
    prs_Arab = "prs_Arab"
    sat_Beng = "sat_Beng"
    sin_Sinh = "sin_Sinh"
    snd_Arab = "snd_Arab"
    tam_Taml = "tam_Taml"
    tel_Telu = "tel_Telu"
    tgk_Cyrl = "tgk_Cyrl"
    uig_Arab = "uig_Arab"
    urd_Arab = "urd_Arab"
    uzn_Latn = "uzn_Latn"
    eng_Latn = "eng_Latn"


# Danda family and other Indic sentence marks; unioned with Unicode P* in the sanity check
INDIC_PUNCTUATION = "।॥॰෴།༎༏༐༑༒᱾᱿၊။۔"
