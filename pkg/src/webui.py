from __future__ import annotations

import tempfile
from pathlib import Path

import streamlit as st

from src.config import (
    DEFAULT_BOX_RADIUS,
    DEFAULT_BOX_TIMES,
    DEFAULT_GAUSSIAN_RADIUS,
    DEFAULT_GAUSSIAN_SIGMA,
    DEFAULT_RANGE_RADIUS,
    DEFAULT_RANGE_SIGMA,
    GAUSS_ITERATIONS,
)
from src.main import RESTORERS, SMOOTHERS, build_config, run_sir
from src.modules.pipeline import builtin_presets
from src.utils.exceptions import SirError


st.set_page_config(page_title="SiR Web UI", page_icon="🖼️", layout="wide")

st.title("SiR")
st.caption("Smooth and iteratively Restore - 스케일 인식 edge-preserving smoothing")

CUSTOM = "(직접 설정)"

with st.form("sir_form"):
    st.subheader("실행 설정")
    uploaded = st.file_uploader("입력 이미지 (PNG / PPM)", type=["png", "ppm"])
    guide_upload = st.file_uploader("가이드 이미지 (선택)", type=["png", "ppm"])

    col1, col2, col3 = st.columns(3)
    with col1:
        preset = st.selectbox("Preset", [CUSTOM] + [p.name for p in builtin_presets()], index=3)
    with col2:
        iters = st.number_input("반복 횟수 n (0 = preset 기본값)", min_value=0, value=0, step=1)
    with col3:
        passes = st.number_input("전체 반복 (passes)", min_value=1, value=1, step=1)

    st.markdown("**직접 설정** (Preset이 `(직접 설정)`일 때만 사용)")
    col4, col5, col6 = st.columns(3)
    with col4:
        smoother = st.selectbox("Smoother", SMOOTHERS, index=0)
        sigma = st.number_input("Gaussian sigma", min_value=0.1, value=DEFAULT_GAUSSIAN_SIGMA, step=0.5)
        radius = st.number_input("Gaussian radius", min_value=1, value=DEFAULT_GAUSSIAN_RADIUS, step=1)
    with col5:
        box_radius = st.number_input("Box radius", min_value=1, value=DEFAULT_BOX_RADIUS, step=1)
        box_times = st.number_input("Box 반복", min_value=1, value=DEFAULT_BOX_TIMES, step=1)
    with col6:
        restorer = st.selectbox("Restorer", RESTORERS, index=0)
        range_sigma = st.number_input("Range sigma", min_value=0.1, value=DEFAULT_RANGE_SIGMA, step=1.0)
        range_radius = st.number_input("Range radius", min_value=1, value=DEFAULT_RANGE_RADIUS, step=1)
        order = st.radio("Separable 순서", options=["hv", "vh"], horizontal=True, index=0)

    submitted = st.form_submit_button("SiR 실행", use_container_width=True)


if not submitted:
    st.info("이미지를 업로드하고 **SiR 실행** 버튼을 눌러주세요.")
    st.stop()


if uploaded is None:
    st.error("입력 이미지를 업로드해주세요.")
    st.stop()


with st.spinner("이미지를 처리 중입니다..."):
    workdir = Path(tempfile.mkdtemp(prefix="sir_webui_"))
    input_path = workdir / uploaded.name
    input_path.write_bytes(uploaded.getvalue())
    guide_path = None
    if guide_upload is not None:
        guide_path = workdir / f"guide_{guide_upload.name}"
        guide_path.write_bytes(guide_upload.getvalue())
    output_path = workdir / f"{input_path.stem}.sir.png"

    try:
        if preset == CUSTOM:
            config = build_config(
                smoother=smoother,
                sigma=float(sigma),
                radius=int(radius),
                box_radius=int(box_radius),
                box_times=int(box_times),
                restorer=restorer,
                range_sigma=float(range_sigma),
                range_radius=int(range_radius),
                order=order,
                iters=int(iters) if iters else GAUSS_ITERATIONS,
                external_guide=guide_path is not None,
            )
        else:
            config = build_config(
                preset=preset,
                iters=int(iters) if iters else None,
                external_guide=guide_path is not None,
            )
        image_path, metadata_path, summary = run_sir(
            input_path=input_path,
            output_path=output_path,
            config=config,
            guide_path=guide_path,
            passes=int(passes),
        )
    except (SirError, ValueError) as exc:
        st.error(f"실행 실패: {exc}")
        st.stop()


st.success("완료되었습니다.")
st.code(summary["timing_line"])

left, right = st.columns(2)
with left:
    st.image(str(input_path), caption="입력", use_container_width=True)
with right:
    st.image(str(image_path), caption="SiR 결과", use_container_width=True)

st.download_button(
    "결과 PNG 다운로드",
    data=image_path.read_bytes(),
    file_name=image_path.name,
    mime="image/png",
)
if metadata_path:
    st.download_button(
        "metadata.json 다운로드",
        data=metadata_path.read_bytes(),
        file_name=metadata_path.name,
        mime="application/json",
    )
st.json(summary["config"])
